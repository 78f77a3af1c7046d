//! Orbit complexes: the 1-skeleton spanned by an orbit, its BFS spanning
//! tree, lassos, and the Reidemeister–Schreier generators of the stabilizer.
//!
//! Two-cells are not stored. They enter only through two checkable rules:
//! every commuting square of the 1-skeleton bounds a cell when its labels
//! commute as braids or are the pair `δ₄, β₄`, and lassos with the same
//! head agree regardless of their tails (checked on homology).

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::action::{self, Orbit};
use crate::braid::{self, BraidWord};
use crate::covering::Coloring;
use crate::error::{Error, Result};
use crate::homlift::{RelativeModel, SurfaceModel};
use crate::rewrite::{self, Budget, Outcome};

/// A one-cell: an unordered edge `{from, to}` or a loop when they agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneCell {
    pub from: usize,
    pub to: usize,
    pub gen: usize,
    pub tree: bool,
}

impl OneCell {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }
}

#[derive(Clone, Debug)]
pub struct OrbitComplex {
    pub orbit: Orbit,
    pub cells: Vec<OneCell>,
    /// Tree edge into each vertex: `(parent, generator)`; `None` at the base.
    pub parent: Vec<Option<(usize, usize)>>,
}

/// A closed path `t·l·t'⁻¹` with tails along the tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lasso {
    /// Vertex where the head starts.
    pub vertex: usize,
    /// Vertex where the head ends; equal to `vertex` for a loop.
    pub other: usize,
    pub label: String,
    pub gen: usize,
    pub word: BraidWord,
}

impl OrbitComplex {
    /// Build the complex of the orbit of `c`. Fails if some generator does not
    /// act as an involution on the orbit.
    pub fn build(c: &Coloring, gens: &[BraidWord], labels: &[String], cap: usize) -> Result<Self> {
        let orbit = action::orbit(c, gens, labels, cap)?;
        for (g, label) in orbit.labels.iter().enumerate() {
            if (0..orbit.len()).any(|v| orbit.edges[orbit.edges[v][g]][g] != v) {
                return Err(Error::NonInvolutive(label.clone()));
            }
        }
        let parent = bfs_tree(&orbit);
        let mut cells = Vec::new();
        for v in 0..orbit.len() {
            for g in 0..orbit.generators.len() {
                let t = orbit.edges[v][g];
                if t < v {
                    continue;
                }
                let tree = parent[t] == Some((v, g)) || (t != v && parent[v] == Some((t, g)));
                cells.push(OneCell {
                    from: v,
                    to: t,
                    gen: g,
                    tree,
                });
            }
        }
        Ok(OrbitComplex {
            orbit,
            cells,
            parent,
        })
    }

    /// The complex of the Birman–Wajnryb generators.
    pub fn bw(c: &Coloring, cap: usize) -> Result<Self> {
        let n = c.len();
        Self::build(c, &braid::bw_generator_set(n)?, &braid::bw_generator_labels(n), cap)
    }

    pub fn base(&self) -> &Coloring {
        &self.orbit.base
    }

    pub fn vertex_count(&self) -> usize {
        self.orbit.len()
    }

    pub fn loops(&self) -> impl Iterator<Item = &OneCell> {
        self.cells.iter().filter(|c| c.is_loop())
    }

    pub fn edges(&self) -> impl Iterator<Item = &OneCell> {
        self.cells.iter().filter(|c| !c.is_loop())
    }

    /// Generator indices along the tree path from the base to `v`.
    pub fn tail_gens(&self, v: usize) -> Vec<usize> {
        tail_gens(&self.parent, v)
    }

    pub fn tail(&self, v: usize) -> BraidWord {
        word_of(&self.orbit, &self.tail_gens(v))
    }

    /// One lasso per loop and per non-tree edge.
    pub fn schreier_generators(&self) -> Vec<Lasso> {
        self.cells
            .iter()
            .filter(|c| !c.tree)
            .map(|c| self.lasso(c.from, c.gen))
            .collect()
    }

    /// The lasso whose head is generator `g` leaving vertex `v`.
    pub fn lasso(&self, v: usize, g: usize) -> Lasso {
        let t = self.orbit.edges[v][g];
        let word = self
            .tail(v)
            .mul(&self.orbit.generators[g])
            .and_then(|w| w.mul(&self.tail(t).inverse()))
            .expect("same strand count");
        Lasso {
            vertex: v,
            other: t,
            label: self.orbit.labels[g].clone(),
            gen: g,
            word,
        }
    }

    /// Rewrite the loop lasso `t·g·t⁻¹` at `v` into `g` over the base, one
    /// tail generator `a` at a time: `a·g·a⁻¹ → g` at the vertex before `a`.
    /// Returns the certificate when every step succeeds within `budget`.
    pub fn peel(&self, v: usize, g: usize, budget: Budget) -> Result<Option<rewrite::RewriteCertificate>> {
        let tail = self.tail_gens(v);
        let head = &self.orbit.generators[g];
        let lasso = action::ColoredBraid::new(self.base().clone(), self.lasso(v, g).word)?;
        let mut cert = rewrite::RewriteCertificate::identity(&lasso);
        let mut vertex = v;
        for k in (0..tail.len()).rev() {
            let (p, a) = self.parent[vertex].expect("non-base vertex has a parent");
            debug_assert_eq!(a, tail[k]);
            let below = &self.orbit.vertices[p];
            if action::apply(head, below)? != *below {
                return Ok(None);
            }
            let step = &self.orbit.generators[a];
            let inner = action::ColoredBraid::new(below.clone(), step.mul(head)?.mul(&step.inverse())?)?;
            let target = action::ColoredBraid::new(below.clone(), head.clone())?;
            let Outcome::Certified(c) = rewrite::equivalent(&inner, &target, budget)? else {
                return Ok(None);
            };
            let at = word_of(&self.orbit, &tail[..k]).len();
            let next = c.embed(&cert.end, at)?;
            cert = cert.then(&next)?;
            vertex = p;
        }
        Ok(Some(cert))
    }

    /// Non-loop edges as `(label, from, to)` with endpoints named by
    /// `name`, sorted.
    pub fn edge_labels(&self, name: impl Fn(&Coloring) -> String) -> Vec<(String, String, String)> {
        let mut out: Vec<_> = self
            .edges()
            .map(|c| {
                let (a, b) = (name(&self.orbit.vertices[c.from]), name(&self.orbit.vertices[c.to]));
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                (self.orbit.labels[c.gen].clone(), a, b)
            })
            .collect();
        out.sort();
        out
    }

    /// Graphviz rendering of the 1-skeleton; tree edges are bold.
    pub fn to_dot(&self, name: impl Fn(&Coloring) -> String) -> String {
        let mut s = String::from("graph orbit {\n");
        for (v, c) in self.orbit.vertices.iter().enumerate() {
            let shape = if v == 0 { ", shape=doublecircle" } else { "" };
            let _ = writeln!(s, "  v{v} [label=\"{}\"{shape}];", name(c));
        }
        for c in &self.cells {
            let style = if c.tree { ", style=bold" } else { "" };
            let _ = writeln!(
                s,
                "  v{} -- v{} [label=\"{}\"{style}];",
                c.from, c.to, self.orbit.labels[c.gen]
            );
        }
        s.push_str("}\n");
        s
    }

    /// Every square `v, vx, vy, vxy = vyx` on four distinct vertices.
    pub fn squares(&self) -> Result<Vec<Square>> {
        let e = &self.orbit.edges;
        let labels = &self.orbit.labels;
        let gens = &self.orbit.generators;
        let mut commute: HashMap<(usize, usize), bool> = HashMap::new();
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            for x in 0..gens.len() {
                for y in x + 1..gens.len() {
                    let (a, b) = (e[v][x], e[v][y]);
                    let (ay, bx) = (e[a][y], e[b][x]);
                    let corners = [v, a, b, ay];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| corners[i] != corners[j]));
                    if ay != bx || !distinct || v > a.min(b).min(ay) {
                        continue;
                    }
                    let commutes = match commute.get(&(x, y)) {
                        Some(&k) => k,
                        None => {
                            let k = braid::words_equal(&gens[x].mul(&gens[y])?, &gens[y].mul(&gens[x])?)?;
                            commute.insert((x, y), k);
                            k
                        }
                    };
                    let pair = [labels[x].as_str(), labels[y].as_str()];
                    let kind = if commutes {
                        SquareKind::Commuting
                    } else if pair.contains(&"d4") && pair.contains(&"b4") {
                        SquareKind::Delta4Beta4
                    } else {
                        SquareKind::Other
                    };
                    out.push(Square {
                        corner: v,
                        labels: (labels[x].clone(), labels[y].clone()),
                        kind,
                    });
                }
            }
        }
        // A square is found once from each corner; keep the lowest.
        out.sort_by(|a, b| (a.corner, &a.labels).cmp(&(b.corner, &b.labels)));
        out.dedup_by(|a, b| a.labels == b.labels && a.corner == b.corner);
        Ok(out)
    }

    /// For every loop `l` at `v`, compare the tree lasso `t·l·t⁻¹` with
    /// `s·l·s⁻¹` for each tail `s` that reaches `v` through a non-tree edge.
    pub fn tail_independence(&self, model: &SurfaceModel) -> Result<TailReport> {
        let mut report = TailReport::default();
        let gens = &self.orbit.generators;
        for head in self.loops() {
            let v = head.from;
            let reference = model.action(&self.lasso(v, head.gen).word)?;
            for u in 0..self.vertex_count() {
                for g in 0..gens.len() {
                    if self.orbit.edges[u][g] != v || self.parent[v] == Some((u, g)) || u == v {
                        continue;
                    }
                    let tail = self.tail(u).mul(&gens[g])?;
                    let word = gens[head.gen].conj_by(&tail.inverse())?;
                    debug_assert_eq!(
                        crate::action::apply(&word, self.base()).ok().as_ref(),
                        Some(self.base())
                    );
                    report.compared += 1;
                    if model.action(&word)? != reference {
                        report.mismatches.push(format!(
                            "{}@{} via {}",
                            self.orbit.labels[head.gen], v, self.orbit.labels[g]
                        ));
                    }
                }
            }
        }
        Ok(report)
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct TailReport {
    pub compared: usize,
    pub mismatches: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SquareKind {
    /// The labels commute in the braid group.
    Commuting,
    /// The labels are `δ₄` and `β₄`, which commute modulo `M`.
    Delta4Beta4,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Square {
    pub corner: usize,
    pub labels: (String, String),
    pub kind: SquareKind,
}

fn bfs_tree(orbit: &Orbit) -> Vec<Option<(usize, usize)>> {
    let mut parent = vec![None; orbit.len()];
    let mut seen = vec![false; orbit.len()];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for (g, &t) in orbit.edges[v].iter().enumerate() {
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((v, g));
                queue.push_back(t);
            }
        }
    }
    parent
}

fn tail_gens(parent: &[Option<(usize, usize)>], mut v: usize) -> Vec<usize> {
    let mut out = Vec::new();
    while let Some((p, g)) = parent[v] {
        out.push(g);
        v = p;
    }
    out.reverse();
    out
}

fn word_of(orbit: &Orbit, gens: &[usize]) -> BraidWord {
    let n = orbit.base.len();
    gens.iter().fold(BraidWord::identity(n), |acc, &g| {
        acc.mul(&orbit.generators[g]).expect("same strand count")
    })
}

/// Schreier generators of the stabilizer of the base for any generator set,
/// one per oriented non-tree pair `(v, g)`, stopping after `limit`.
pub fn oriented_schreier_generators(orbit: &Orbit, limit: usize) -> (usize, Vec<BraidWord>) {
    let parent = bfs_tree(orbit);
    let total = orbit.len() * orbit.generators.len() - (orbit.len() - 1);
    let mut out = Vec::new();
    'outer: for v in 0..orbit.len() {
        for g in 0..orbit.generators.len() {
            let t = orbit.edges[v][g];
            if parent[t] == Some((v, g)) {
                continue;
            }
            if out.len() >= limit {
                break 'outer;
            }
            let w = word_of(orbit, &tail_gens(&parent, v))
                .mul(&orbit.generators[g])
                .and_then(|w| w.mul(&word_of(orbit, &tail_gens(&parent, t)).inverse()))
                .expect("same strand count");
            out.push(w);
        }
    }
    (total, out)
}

// ---------------------------------------------------------------------------
// Generation check.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GenStatus {
    Certified,
    HomologyMatched,
    Unknown,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LassoCheck {
    pub lasso: String,
    pub head: String,
    pub status: GenStatus,
    /// A product of the listed generators with the same relative action.
    pub matched_by: Option<String>,
    /// Whether the match needs `δ₆`.
    pub needs_delta6: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenerationReport {
    pub n: usize,
    pub part: char,
    pub base: String,
    pub generators: Vec<String>,
    pub lassos: Vec<LassoCheck>,
}

impl GenerationReport {
    pub fn count(&self, s: GenStatus) -> usize {
        self.lassos.iter().filter(|l| l.status == s).count()
    }
}

/// Claimed stabilizer generators for the base `ρ_{23}^n` (part `a`) or
/// `ρ_{2,3,n-1}^n` (part `b`), with their display names.
pub fn generating_set(n: usize, part: char) -> Result<(Coloring, Vec<(String, BraidWord)>)> {
    let g = |i: usize| -> Result<(String, BraidWord)> { Ok((format!("b{i}"), BraidWord::gen(n, i, 1)?)) };
    let mut out = vec![g(0)?, g(2)?];
    match part {
        'a' => {
            if !(6..=8).contains(&n) {
                return Err(Error::Unsupported(format!("part (a) is checked for 6 <= n <= 8, got {n}")));
            }
            for i in 4..=n - 2 {
                out.push(g(i)?);
            }
            out.push(("d4".into(), braid::delta4(n)?));
            if n >= 8 {
                out.push(("d6".into(), braid::delta6(n)?));
            }
            Ok((crate::covering::rho(n, &[2, 3])?, out))
        }
        'b' => {
            if n != 6 && n != 8 {
                return Err(Error::Unsupported(format!("part (b) is checked for n = 6, 8, got {n}")));
            }
            for i in 4..=n - 3 {
                out.push(g(i)?);
            }
            let tail = BraidWord::new(
                n,
                (3..=n - 3).rev().map(|i| braid::Letter::new(i, -1)).collect(),
            )?;
            let name = format!(
                "[b{}]{}",
                n - 2,
                (3..=n - 3).rev().map(|i| format!("b{i}^-1")).collect::<Vec<_>>().join(" ")
            );
            out.push((name, BraidWord::gen(n, n - 2, 1)?.conj_by(&tail)?));
            if n >= 8 {
                out.push(("d4".into(), braid::delta4(n)?));
            }
            Ok((crate::covering::rho(n, &[2, 3, n - 1])?, out))
        }
        _ => Err(Error::Unsupported(format!("no part {part}"))),
    }
}

/// Closure of the generators' relative actions: BFS over products of the
/// generators and their inverses, keyed by matrix, up to `cap` matrices.
/// Each matrix keeps up to `CANDIDATES` of the shortest products reaching it.
fn relative_closure(
    model: &RelativeModel,
    gens: &[(String, BraidWord)],
    cap: usize,
) -> Result<HashMap<Vec<Vec<i64>>, Vec<Path>>> {
    let mut mats = Vec::new();
    for (_, w) in gens {
        mats.push((model.action(w)?, 1));
        mats.push((model.action(&w.inverse())?, -1));
    }
    let id = model.action(&BraidWord::identity(model_strands(gens)))?;
    let mut seen: HashMap<Vec<Vec<i64>>, Vec<Path>> = HashMap::new();
    seen.insert(id.rows(), vec![Vec::new()]);
    let mut frontier = vec![(id, Path::new())];
    while !frontier.is_empty() && seen.len() < cap {
        let mut next = Vec::new();
        for (m, path) in &frontier {
            for (k, (g, e)) in mats.iter().enumerate() {
                if path.last() == Some(&(k / 2, -e)) {
                    continue;
                }
                let p = m.compose(g);
                let mut path = path.clone();
                path.push((k / 2, *e));
                let full = seen.len() >= cap;
                match seen.get_mut(&p.rows()) {
                    Some(paths) => {
                        if paths.len() < CANDIDATES && paths[0].len() == path.len() {
                            paths.push(path);
                        }
                    }
                    None if !full => {
                        seen.insert(p.rows(), vec![path.clone()]);
                        next.push((p, path));
                    }
                    None => {}
                }
            }
        }
        frontier = next;
    }
    Ok(seen)
}

type Path = Vec<(usize, i32)>;

const CANDIDATES: usize = 8;

fn model_strands(gens: &[(String, BraidWord)]) -> usize {
    gens.first().map_or(2, |(_, w)| w.strands())
}

fn product_word(gens: &[(String, BraidWord)], path: &[(usize, i32)], n: usize) -> Result<(String, BraidWord)> {
    let mut w = BraidWord::identity(n);
    let mut names = Vec::new();
    for &(g, e) in path {
        let (name, x) = &gens[g];
        w = w.mul(&x.pow(e))?;
        names.push(if e < 0 { format!("({name})^-1") } else { name.clone() });
    }
    let name = if names.is_empty() { "e".into() } else { names.join(" ") };
    Ok((name, w))
}

/// Check that every Schreier generator of the BW complex at the base of
/// `generating_set` agrees, modulo `M` and `P`, with a product of its
/// generators. Matching uses the relative action, which is invariant under
/// the local moves; a match is then confirmed by certificate search.
pub fn verify_generation(n: usize, part: char, budget: Budget, closure_cap: usize) -> Result<GenerationReport> {
    let (base, gens) = generating_set(n, part)?;
    let model = RelativeModel::build(&base)?;
    let cx = OrbitComplex::bw(&base, 100_000)?;
    let all = relative_closure(&model, &gens, closure_cap)?;
    let without_d6: Vec<(String, BraidWord)> = gens.iter().filter(|(s, _)| s != "d6").cloned().collect();
    let has_d6 = without_d6.len() != gens.len();
    let reduced = if has_d6 {
        Some(relative_closure(&model, &without_d6, closure_cap)?)
    } else {
        None
    };
    let mut lassos = Vec::new();
    for l in cx.schreier_generators() {
        let key = model.action(&l.word)?.rows();
        let head = format!("{}@{}", l.label, cx.orbit.vertices[l.vertex].canonical_text());
        let Some(paths) = all.get(&key) else {
            lassos.push(LassoCheck {
                lasso: l.word.to_string(),
                head,
                status: GenStatus::Unknown,
                matched_by: None,
                needs_delta6: false,
            });
            continue;
        };
        let needs_delta6 = reduced.as_ref().is_some_and(|r| !r.contains_key(&key));
        let a = action::ColoredBraid::new(base.clone(), l.word.clone())?;
        // Either compare the lasso directly, or first shrink a loop lasso
        // to its head by peeling the tail one generator at a time.
        let peeled = if l.vertex == l.other {
            cx.peel(l.vertex, l.gen, budget)?
        } else {
            None
        };
        let mut matched = None;
        let mut status = GenStatus::HomologyMatched;
        'paths: for path in paths {
            let (name, p) = product_word(&gens, path, n)?;
            let b = action::ColoredBraid::new(base.clone(), p)?;
            if matched.is_none() {
                matched = Some(name.clone());
            }
            let mut attempts = vec![(a.clone(), None)];
            if let Some(c) = &peeled {
                attempts.push((c.end.clone(), Some(c)));
            }
            for (from, prefix) in attempts {
                let Outcome::Certified(c) = rewrite::equivalent(&from, &b, budget)? else {
                    continue;
                };
                let c = match prefix {
                    Some(p) => p.clone().then(&c)?,
                    None => c,
                };
                if rewrite::replay(&c)? {
                    status = GenStatus::Certified;
                    matched = Some(name);
                    break 'paths;
                }
            }
        }
        lassos.push(LassoCheck {
            lasso: l.word.to_string(),
            head,
            status,
            matched_by: matched,
            needs_delta6,
        });
    }
    Ok(GenerationReport {
        n,
        part,
        base: base.canonical_text(),
        generators: gens.into_iter().map(|(s, _)| s).collect(),
        lassos,
    })
}

/// Count cells by label, loops and edges separately.
pub fn cell_census(cx: &OrbitComplex) -> BTreeMap<String, (usize, usize)> {
    let mut out: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for c in &cx.cells {
        let e = out.entry(cx.orbit.labels[c.gen].clone()).or_default();
        if c.is_loop() {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }
    out
}
