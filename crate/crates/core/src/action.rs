//! The right action of braids on colorings and orbit enumeration.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{self, BraidWord, Letter};
use crate::covering::{self, Coloring};
use crate::error::{Error, Result};
use crate::perm::{Permutation, Transposition};

/// Act by a single letter in place. A positive crossing sends the pair
/// `(a, b)` to `(a·b·a, a)`: the strand passing under is conjugated by the
/// color of the strand passing over.
pub fn apply_letter(colors: &mut [Transposition], l: Letter) {
    let i = l.i();
    let (a, b) = (colors[i], colors[i + 1]);
    if l.exp > 0 {
        colors[i] = b.conj(&a);
        colors[i + 1] = a;
    } else {
        colors[i] = b;
        colors[i + 1] = a.conj(&b);
    }
}

fn check_strands(w: &BraidWord, c: &Coloring) -> Result<()> {
    if w.strands() != c.len() {
        return Err(Error::StrandMismatch {
            word: w.strands(),
            points: c.len(),
        });
    }
    Ok(())
}

/// `(c)w`, the coloring at the bottom of `w` when the top is colored by `c`.
pub fn apply(w: &BraidWord, c: &Coloring) -> Result<Coloring> {
    check_strands(w, c)?;
    let mut out = c.clone();
    for &l in w.letters() {
        apply_letter(out.colors_mut(), l);
    }
    Ok(out)
}

pub fn is_liftable(w: &BraidWord, c: &Coloring) -> Result<bool> {
    Ok(&apply(w, c)? == c)
}

/// The colorings seen along a word: entry `k` is the coloring after the
/// first `k` letters.
pub fn trajectory(w: &BraidWord, c: &Coloring) -> Result<Vec<Coloring>> {
    check_strands(w, c)?;
    let mut cur = c.clone();
    let mut out = Vec::with_capacity(w.len() + 1);
    out.push(cur.clone());
    for &l in w.letters() {
        apply_letter(cur.colors_mut(), l);
        out.push(cur.clone());
    }
    Ok(out)
}

/// A braid together with the coloring at its top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredBraid {
    pub source: Coloring,
    pub word: Vec<Letter>,
}

impl ColoredBraid {
    pub fn new(source: Coloring, word: BraidWord) -> Result<Self> {
        check_strands(&word, &source)?;
        Ok(ColoredBraid {
            source,
            word: word.into_letters(),
        })
    }

    pub fn braid(&self) -> BraidWord {
        BraidWord::new(self.source.len(), self.word.clone()).expect("validated on construction")
    }

    pub fn target(&self) -> Coloring {
        apply(&self.braid(), &self.source).expect("strand count checked")
    }
}

/// Breadth-first closure of a coloring under a list of braids.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub base: Coloring,
    /// Vertices in discovery order; index 0 is the base.
    pub vertices: Vec<Coloring>,
    pub generators: Vec<BraidWord>,
    pub labels: Vec<String>,
    /// `edges[v][g]` is the image of vertex `v` under generator `g`.
    pub edges: Vec<Vec<usize>>,
    index: HashMap<Coloring, usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitEdge {
    pub from: String,
    pub gen: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitReport {
    pub vertices: Vec<String>,
    pub edges: Vec<OrbitEdge>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, c: &Coloring) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn contains(&self, c: &Coloring) -> bool {
        self.index.contains_key(c)
    }

    /// Vertices sorted by canonical text.
    pub fn sorted_vertices(&self) -> Vec<Coloring> {
        let mut v = self.vertices.clone();
        v.sort_by_key(|c| c.canonical_text());
        v
    }

    pub fn report(&self) -> OrbitReport {
        let mut edges = Vec::new();
        for (v, row) in self.edges.iter().enumerate() {
            for (g, &t) in row.iter().enumerate() {
                edges.push(OrbitEdge {
                    from: self.vertices[v].canonical_text(),
                    gen: self.labels[g].clone(),
                    to: self.vertices[t].canonical_text(),
                });
            }
        }
        edges.sort_by(|a, b| (&a.from, &a.gen, &a.to).cmp(&(&b.from, &b.gen, &b.to)));
        OrbitReport {
            vertices: self.sorted_vertices().iter().map(|c| c.canonical_text()).collect(),
            edges,
        }
    }
}

/// BFS closure of `c` under `gens`, failing once more than `cap` vertices are
/// found. Images of a BFS level are computed in parallel and merged in
/// discovery order, so the result does not depend on scheduling.
pub fn orbit(c: &Coloring, gens: &[BraidWord], labels: &[String], cap: usize) -> Result<Orbit> {
    for g in gens {
        check_strands(g, c)?;
    }
    let mut vertices = vec![c.clone()];
    let mut index = HashMap::from([(c.clone(), 0usize)]);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut frontier = 0..1;
    while !frontier.is_empty() {
        let images: Vec<Vec<Coloring>> = vertices[frontier.clone()]
            .par_iter()
            .map(|v| gens.iter().map(|g| apply(g, v).expect("checked")).collect())
            .collect();
        let next_start = vertices.len();
        for row in images {
            let mut targets = Vec::with_capacity(row.len());
            for img in row {
                let id = match index.get(&img) {
                    Some(&id) => id,
                    None => {
                        if vertices.len() >= cap {
                            return Err(Error::CapExceeded(cap));
                        }
                        let id = vertices.len();
                        index.insert(img.clone(), id);
                        vertices.push(img);
                        id
                    }
                };
                targets.push(id);
            }
            edges.push(targets);
        }
        frontier = next_start..vertices.len();
    }
    let labels = if labels.len() == gens.len() {
        labels.to_vec()
    } else {
        gens.iter().map(|g| g.to_string()).collect()
    };
    Ok(Orbit {
        base: c.clone(),
        vertices,
        generators: gens.to_vec(),
        labels,
        edges,
        index,
    })
}

/// Orbit under the Birman–Wajnryb generators on `c.len()` strands.
pub fn bw_orbit(c: &Coloring, cap: usize) -> Result<Orbit> {
    let n = c.len();
    orbit(c, &braid::bw_generator_set(n)?, &braid::bw_generator_labels(n), cap)
}

/// Boundary monodromies attained by `C^n` for the parity of `n`.
pub fn classes_for(n: usize) -> Vec<Permutation> {
    let t = |a, b| Transposition::t(a, b).to_permutation(4).expect("degree 4");
    if n % 2 == 0 {
        vec![Permutation::identity(4), t(1, 4).then(&t(2, 3))]
    } else {
        vec![t(2, 3), t(1, 4)]
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassCheck {
    pub n: usize,
    pub sigma: String,
    pub seed: String,
    pub orbit_size: usize,
    pub class_size: usize,
    pub equal: bool,
}

/// For each boundary monodromy allowed by the parity of `n`, compare the
/// BW orbit of one member of `C^n_σ` with the whole of `C^n_σ`.
pub fn verify_orbit_classification(n: usize, cap: usize) -> Result<Vec<ClassCheck>> {
    if !(6..=9).contains(&n) {
        return Err(Error::Unsupported(format!("classification check needs 6 <= n <= 9, got {n}")));
    }
    classes_for(n)
        .into_iter()
        .map(|sigma| {
            let class = covering::standard_class_with(n, &sigma);
            let seed = class[0].clone();
            let orb = bw_orbit(&seed, cap)?;
            let mut got = orb.vertices.clone();
            got.sort();
            Ok(ClassCheck {
                n,
                sigma: sigma.to_string(),
                seed: seed.canonical_text(),
                orbit_size: orb.len(),
                class_size: class.len(),
                equal: got == class,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableEntry {
    pub claim: String,
    pub holds: bool,
}

/// The action of `δ₄` on six points: it fixes `ρ_∅`, `ρ̃_∅`, every `ρ_{ij}`
/// and `ρ̃_{ij}`, and sends `ρ_i` to `ρ̃_i`.
pub fn delta4_table() -> Result<Vec<TableEntry>> {
    let d4 = braid::delta4(6)?;
    let mut out = Vec::new();
    let mut fix = |name: String, c: Coloring| -> Result<()> {
        out.push(TableEntry {
            holds: apply(&d4, &c)? == c,
            claim: format!("d4 fixes {name}"),
        });
        Ok(())
    };
    fix("rho_{}".into(), covering::rho(6, &[])?)?;
    fix("rho~_{}".into(), covering::rho_tilde(6, &[])?)?;
    for i in 2..=5 {
        for j in i + 1..=5 {
            fix(format!("rho_{{{i}{j}}}"), covering::rho(6, &[i, j])?)?;
            fix(format!("rho~_{{{i}{j}}}"), covering::rho_tilde(6, &[i, j])?)?;
        }
    }
    for i in 2..=5 {
        out.push(TableEntry {
            claim: format!("d4 sends rho_{{{i}}} to rho~_{{{i}}}"),
            holds: apply(&d4, &covering::rho(6, &[i])?)? == covering::rho_tilde(6, &[i])?,
        });
    }
    Ok(out)
}

/// The transpositions of `S_d` in lexicographic order.
pub fn transpositions(d: usize) -> Vec<Transposition> {
    let mut out = Vec::new();
    for a in 1..=d {
        for b in a + 1..=d {
            out.push(Transposition::t(a, b));
        }
    }
    out
}

/// Orbits of the full braid group on all connected `d`-colorings with `n`
/// points, found by union-find over the generators `β_i`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FullOrbits {
    pub d: usize,
    pub n: usize,
    pub total_colorings: usize,
    pub connected_colorings: usize,
    /// One entry per orbit, sorted by boundary monodromy and size.
    pub orbits: Vec<FullOrbitSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FullOrbitSummary {
    pub boundary_monodromy: String,
    pub size: usize,
    /// Smallest member in encoding order.
    pub representative: String,
}

impl FullOrbits {
    /// Whether every attained boundary monodromy occurs in exactly one orbit.
    pub fn classified_by_monodromy(&self) -> bool {
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        for o in &self.orbits {
            *seen.entry(o.boundary_monodromy.as_str()).or_default() += 1;
        }
        seen.values().all(|&k| k == 1)
    }
}

pub fn full_braid_orbits(d: usize, n: usize) -> Result<FullOrbits> {
    let ts = transpositions(d);
    let k = ts.len();
    let total = k
        .checked_pow(n as u32)
        .filter(|&t| t <= 50_000_000)
        .ok_or_else(|| Error::Unsupported(format!("{k}^{n} colorings is too many for exhaustive mode")))?;
    let pos: HashMap<Transposition, usize> = ts.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let decode = |mut code: usize| -> Vec<Transposition> {
        let mut v = vec![ts[0]; n];
        for slot in v.iter_mut().rev() {
            *slot = ts[code % k];
            code /= k;
        }
        v
    };
    let encode = |v: &[Transposition]| -> usize { v.iter().fold(0, |acc, t| acc * k + pos[t]) };

    let connected: Vec<bool> = (0..total)
        .into_par_iter()
        .map(|code| Coloring::from_parts_unchecked(d, decode(code)).is_connected())
        .collect();
    // Each β_i is a bijection, so its graph joined over i gives the orbits.
    let links: Vec<(usize, usize)> = (0..total)
        .into_par_iter()
        .filter(|&code| connected[code])
        .flat_map_iter(|code| {
            let v = decode(code);
            (0..n - 1).map(move |i| {
                let mut w = v.clone();
                apply_letter(&mut w, Letter::new(i, 1));
                (code, encode(&w))
            })
        })
        .collect();
    let mut parent: Vec<u32> = (0..total as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for (a, b) in links {
        let (ra, rb) = (find(&mut parent, a as u32), find(&mut parent, b as u32));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi as usize] = lo;
        }
    }
    let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
    let mut count = 0;
    for code in 0..total {
        if connected[code] {
            count += 1;
            *sizes.entry(find(&mut parent, code as u32)).or_default() += 1;
        }
    }
    let mut orbits: Vec<FullOrbitSummary> = sizes
        .into_iter()
        .map(|(root, size)| {
            let c = Coloring::from_parts_unchecked(d, decode(root as usize));
            FullOrbitSummary {
                boundary_monodromy: c.boundary_monodromy().to_string(),
                size,
                representative: c.canonical_text(),
            }
        })
        .collect();
    orbits.sort();
    Ok(FullOrbits {
        d,
        n,
        total_colorings: total,
        connected_colorings: count,
        orbits,
    })
}
