//! The non-local moves I–V, the kernel generator list, and the census of
//! braid orbits on colorings of small degree.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::action::{self, ColoredBraid};
use crate::braid::{self, BraidWord};
use crate::complex;
use crate::covering::Coloring;
use crate::error::{Error, Result};
use crate::homlift::{RelativeModel, SurfaceModel};
use crate::perm::Transposition;
use crate::rewrite::{self, Budget, Outcome, RewriteCertificate};

const MOVE_DATA: &str = include_str!("../data/moves.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MoveId {
    I,
    II,
    III,
    IV,
    V,
}

impl MoveId {
    pub const ALL: [MoveId; 5] = [MoveId::I, MoveId::II, MoveId::III, MoveId::IV, MoveId::V];
}

impl fmt::Display for MoveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for MoveId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(MoveId::I),
            "II" | "2" => Ok(MoveId::II),
            "III" | "3" => Ok(MoveId::III),
            "IV" | "4" => Ok(MoveId::IV),
            "V" | "5" => Ok(MoveId::V),
            _ => Err(Error::Parse(format!("unknown move {s:?}"))),
        }
    }
}

/// Coloring template: fixed leading colors, then `fill` up to the width.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextTemplate {
    pub head: Vec<String>,
    pub fill: String,
}

impl ContextTemplate {
    pub fn instantiate(&self, n: usize) -> Result<Coloring> {
        let parse = |s: &String| s.parse::<Transposition>();
        let mut colors = self.head.iter().map(parse).collect::<Result<Vec<_>>>()?;
        if colors.len() > n {
            return Err(Error::InvalidColoring(format!("context needs at least {} points", colors.len())));
        }
        colors.resize(n, self.fill.parse()?);
        Coloring::new(4, colors)
    }
}

/// One move as stored in the data file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSpec {
    pub id: MoveId,
    pub min_strands: usize,
    pub context: ContextTemplate,
    pub lhs: String,
    pub note: String,
}

impl MoveSpec {
    pub fn colored(&self, n: usize) -> Result<ColoredBraid> {
        if n < self.min_strands {
            return Err(Error::MoveWidth(self.id.to_string(), n));
        }
        ColoredBraid::new(self.context.instantiate(n)?, braid::parse_word(&self.lhs, n)?)
    }
}

pub fn move_specs() -> Result<Vec<MoveSpec>> {
    serde_json::from_str(MOVE_DATA).map_err(|e| Error::Parse(format!("move data: {e}")))
}

pub fn move_spec(id: MoveId) -> Result<MoveSpec> {
    move_specs()?
        .into_iter()
        .find(|m| m.id == id)
        .ok_or_else(|| Error::MoveData(format!("no entry for move {id}")))
}

/// The two checks a move must pass.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveCheck {
    pub id: MoveId,
    pub strands: usize,
    pub context: String,
    pub lhs: String,
    pub liftable: bool,
    pub homology_trivial: bool,
}

impl MoveCheck {
    pub fn passes(&self) -> bool {
        self.liftable && self.homology_trivial
    }
}

pub fn check_move(id: MoveId, n: usize) -> Result<MoveCheck> {
    let spec = move_spec(id)?;
    let n = n.max(spec.min_strands);
    let cb = spec.colored(n)?;
    let liftable = cb.target() == cb.source;
    let homology_trivial = liftable && SurfaceModel::build(&cb.source)?.action(&cb.braid())?.is_identity();
    Ok(MoveCheck {
        id,
        strands: n,
        context: cb.source.canonical_text(),
        lhs: cb.braid().to_string(),
        liftable,
        homology_trivial,
    })
}

/// The left side of move `id` on `n` strands, validated.
pub fn move_lhs(id: MoveId, n: usize) -> Result<ColoredBraid> {
    let spec = move_spec(id)?;
    let cb = spec.colored(n)?;
    let check = check_move(id, n)?;
    if !check.passes() {
        return Err(Error::MoveData(format!(
            "move {id} on {n} strands: liftable {}, homology trivial {}",
            check.liftable, check.homology_trivial
        )));
    }
    Ok(cb)
}

/// Generators of the kernel on `n = 2g+6` strands, with names. `B` and `D`
/// come with all their `β₄ → δ₄` substitution variants.
pub fn kernel_generator_list(n: usize) -> Result<Vec<(String, BraidWord)>> {
    if n < 10 || n % 2 != 0 {
        return Err(Error::Unsupported(format!("kernel list needs even n >= 10, got {n}")));
    }
    let g = (n - 6) / 2;
    let mut out = vec![
        ("b0".to_string(), BraidWord::gen(n, 0, 1)?),
        ("b2".to_string(), BraidWord::gen(n, 2, 1)?),
    ];
    for (name, display) in [("B", braid::kernel_b_display(n)?), ("D", braid::kernel_d_display(g, n)?)] {
        for (mask, w) in display.variants()?.into_iter().enumerate() {
            out.push((format!("{name}[{mask:0w$b}]", w = display.beta4_occurrences()), w));
        }
    }
    Ok(out)
}

/// Result of trying to derive a move from `M`, `P` and stabilization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    Certified(RewriteCertificate),
    /// The relative action over the stabilized context is nontrivial, so no
    /// certificate of local moves exists there.
    Obstructed {
        context: String,
        relative_rank: usize,
        deviation_rank: usize,
    },
    Unknown {
        reason: String,
    },
}

/// The context of `id` with one trivial sheet attached to sheet 4.
pub fn stabilized_context(id: MoveId, n: usize) -> Result<ColoredBraid> {
    let cb = move_spec(id)?.colored(n)?;
    let source = cb.source.stabilize(4)?;
    ColoredBraid::new(source.clone(), cb.braid().widen(source.len())?)
}

pub fn derive_move(id: MoveId, n: usize, budget: Budget) -> Result<Derivation> {
    if !matches!(id, MoveId::I | MoveId::V) {
        return Ok(Derivation::Unknown {
            reason: format!("move {id} needs tangle-level flips"),
        });
    }
    let cb = stabilized_context(id, n)?;
    let model = RelativeModel::build(&cb.source)?;
    let rel = model.action(&cb.braid())?;
    if !rel.is_identity() {
        return Ok(Derivation::Obstructed {
            context: cb.source.canonical_text(),
            relative_rank: model.rank(),
            deviation_rank: rel.deviation_rank(),
        });
    }
    Ok(match rewrite::in_reduced_kernel(&cb.braid(), &cb.source, budget)? {
        Outcome::Certified(c) => Derivation::Certified(c),
        Outcome::Unknown { states } => Derivation::Unknown {
            reason: format!("budget exhausted after {states} states"),
        },
    })
}

// ---------------------------------------------------------------------------
// Census.

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorSet {
    /// `β₀, …, β_{n-2}`.
    Full,
    /// The Birman–Wajnryb generators of the liftable group.
    Bw,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CensusMode {
    /// Every connected coloring; orbits under the full braid group.
    Exhaustive,
    /// Orbits of the given seeds.
    Seeded { seeds: Vec<Coloring>, gens: GeneratorSet },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusLimits {
    /// Vertex cap for explicit orbit enumeration.
    pub orbit_cap: usize,
    /// Schreier generators examined per orbit.
    pub sample: usize,
    /// Search budget per generator.
    pub budget: Budget,
}

impl Default for CensusLimits {
    fn default() -> Self {
        CensusLimits {
            orbit_cap: 200_000,
            sample: 4,
            budget: Budget {
                states: 2_000,
                ..Budget::default()
            },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchreierStats {
    /// Schreier generators of the stabilizer in total.
    pub total: usize,
    pub examined: usize,
    pub homology_trivial: usize,
    pub certified: usize,
    pub unknown: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusOrbit {
    pub boundary_monodromy: String,
    pub size: usize,
    pub representative: String,
    /// `None` when the orbit is larger than the enumeration cap.
    pub schreier: Option<SchreierStats>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub d: usize,
    pub generators: GeneratorSet,
    pub enumerated: usize,
    pub orbits: Vec<CensusOrbit>,
    /// Every attained boundary monodromy occurs in exactly one orbit.
    pub classified_by_monodromy: bool,
}

impl CensusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn table(&self) -> String {
        let mut s = format!(
            "n={} d={} generators={:?} enumerated={} classified={}\n",
            self.n, self.d, self.generators, self.enumerated, self.classified_by_monodromy
        );
        s.push_str("monodromy        size  schreier  trivial  certified  unknown  representative\n");
        for o in &self.orbits {
            let st = o.schreier.clone().unwrap_or_default();
            s.push_str(&format!(
                "{:<14} {:>6} {:>9} {:>8} {:>10} {:>8}  {}\n",
                o.boundary_monodromy, o.size, st.total, st.homology_trivial, st.certified, st.unknown, o.representative
            ));
        }
        s
    }
}

fn generator_words(n: usize, gens: &GeneratorSet) -> Result<(Vec<BraidWord>, Vec<String>)> {
    match gens {
        GeneratorSet::Full => Ok((
            (0..n - 1).map(|i| BraidWord::gen(n, i, 1)).collect::<Result<_>>()?,
            (0..n - 1).map(|i| format!("b{i}")).collect(),
        )),
        GeneratorSet::Bw => Ok((braid::bw_generator_set(n)?, braid::bw_generator_labels(n))),
    }
}

fn schreier_stats(
    seed: &Coloring,
    gens: &[BraidWord],
    labels: &[String],
    limits: &CensusLimits,
) -> Result<Option<SchreierStats>> {
    let orbit = match action::orbit(seed, gens, labels, limits.orbit_cap) {
        Ok(o) => o,
        Err(Error::CapExceeded(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let (total, words) = complex::oriented_schreier_generators(&orbit, limits.sample);
    let model = SurfaceModel::build(seed)?;
    let mut st = SchreierStats {
        total,
        examined: words.len(),
        ..SchreierStats::default()
    };
    for w in &words {
        if model.action(w)?.is_identity() {
            st.homology_trivial += 1;
        }
        match rewrite::in_reduced_kernel(w, seed, limits.budget)? {
            Outcome::Certified(_) => st.certified += 1,
            Outcome::Unknown { .. } => st.unknown += 1,
        }
    }
    Ok(Some(st))
}

/// Decompose colorings into braid orbits and gather Schreier statistics.
pub fn census(n: usize, d: usize, mode: &CensusMode, limits: CensusLimits) -> Result<CensusReport> {
    if !(4..=5).contains(&d) {
        return Err(Error::Unsupported(format!("census covers degrees 4 and 5, got {d}")));
    }
    match mode {
        CensusMode::Exhaustive => {
            if n > 6 {
                return Err(Error::Unsupported(format!("exhaustive census needs n <= 6, got {n}")));
            }
            let full = action::full_braid_orbits(d, n)?;
            let (gens, labels) = generator_words(n, &GeneratorSet::Full)?;
            let classified = full.classified_by_monodromy();
            let orbits = full
                .orbits
                .iter()
                .map(|o| {
                    let seed: Coloring = o.representative.parse()?;
                    Ok(CensusOrbit {
                        boundary_monodromy: o.boundary_monodromy.clone(),
                        size: o.size,
                        representative: o.representative.clone(),
                        schreier: schreier_stats(&seed, &gens, &labels, &limits)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(CensusReport {
                n,
                d,
                generators: GeneratorSet::Full,
                enumerated: full.connected_colorings,
                orbits,
                classified_by_monodromy: classified,
            })
        }
        CensusMode::Seeded { seeds, gens: set } => {
            if n > 9 {
                return Err(Error::Unsupported(format!("seeded census needs n <= 9, got {n}")));
            }
            let (gens, labels) = generator_words(n, set)?;
            let mut orbits: Vec<CensusOrbit> = Vec::new();
            let mut members: Vec<Vec<Coloring>> = Vec::new();
            for seed in seeds {
                if seed.len() != n || seed.degree() != d {
                    return Err(Error::InvalidColoring(format!("seed {seed} is not a {d}-coloring of {n} points")));
                }
                if members.iter().any(|m| m.binary_search(seed).is_ok()) {
                    continue;
                }
                let orbit = action::orbit(seed, &gens, &labels, limits.orbit_cap)?;
                let sorted = orbit.sorted_vertices();
                orbits.push(CensusOrbit {
                    boundary_monodromy: seed.boundary_monodromy().to_string(),
                    size: orbit.len(),
                    representative: sorted[0].canonical_text(),
                    schreier: schreier_stats(seed, &gens, &labels, &limits)?,
                });
                members.push(sorted);
            }
            let mut per_mu: BTreeMap<&str, usize> = BTreeMap::new();
            for o in &orbits {
                *per_mu.entry(o.boundary_monodromy.as_str()).or_default() += 1;
            }
            let classified = per_mu.values().all(|&k| k == 1);
            let enumerated = orbits.iter().map(|o| o.size).sum();
            Ok(CensusReport {
                n,
                d,
                generators: set.clone(),
                enumerated,
                orbits,
                classified_by_monodromy: classified,
            })
        }
    }
}
