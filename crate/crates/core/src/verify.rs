//! The acceptance suite: thirteen exact checks, each reported as one line.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::{self, ColoredBraid};
use crate::braid::{self, BraidWord, Letter};
use crate::catalog::{self, CensusLimits, CensusMode, Derivation, MoveId};
use crate::complex::OrbitComplex;
use crate::covering::{self, Coloring};
use crate::error::Result;
use crate::homlift::{RelativeModel, SurfaceModel};
use crate::perm::{kappa, Transposition};
use crate::rewrite::{self, Budget, Outcome, RewriteCertificate, RewriteStep};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub budget: Budget,
    /// Random word/coloring pairs for the action check.
    pub action_pairs: usize,
    /// Random certificates to replay.
    pub certificates: usize,
    /// Random liftable words for the move-invariance check.
    pub liftable_words: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0x5eed,
            budget: Budget::default(),
            action_pairs: 10_000,
            certificates: 10_000,
            liftable_words: 100,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub millis: u128,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} {}: {}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

pub const CRITERIA: [&str; 13] = [
    "kappa table",
    "crossing action",
    "delta4 on six points",
    "orbit sizes and classification",
    "conjugation identities",
    "cover rank",
    "generator images on homology",
    "kernel generators",
    "move soundness",
    "delta4 beta4 commutator",
    "handle pair",
    "move catalog",
    "degree-5 census",
];

/// Run criterion `id` (1-based). Internal errors count as failures.
pub fn run(id: usize, cfg: &VerifyConfig) -> CriterionResult {
    let start = Instant::now();
    let out = match id {
        1 => kappa_table(),
        2 => crossing_action(cfg),
        3 => delta4_six(),
        4 => orbits(),
        5 => identities(),
        6 => cover_rank(),
        7 => generator_images(),
        8 => kernel(),
        9 => soundness(cfg),
        10 => commutator(cfg),
        11 => handle_pair(cfg),
        12 => moves(cfg),
        13 => census(),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (pass, detail) = out.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult {
        id,
        name: CRITERIA.get(id.wrapping_sub(1)).unwrap_or(&"unknown").to_string(),
        pass,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).map(|id| run(id, cfg)).collect()
}

type Check = Result<(bool, String)>;

fn t(a: usize, b: usize) -> Transposition {
    Transposition::t(a, b)
}

fn kappa_table() -> Check {
    let expected = [
        ((1, 2), (1, 2)),
        ((3, 4), (1, 2)),
        ((2, 3), (2, 3)),
        ((1, 4), (2, 3)),
        ((1, 3), (1, 3)),
        ((2, 4), (1, 3)),
    ];
    let bad: Vec<String> = expected
        .iter()
        .filter(|((a, b), (c, d))| kappa(&t(*a, *b)).ok() != Some(t(*c, *d)))
        .map(|((a, b), _)| format!("({a}{b})"))
        .collect();
    Ok((bad.is_empty(), format!("6 images, mismatches {bad:?}")))
}

fn random_coloring(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Coloring {
    let ts = action::transpositions(d);
    Coloring::new(d, (0..n).map(|_| ts[rng.gen_range(0..ts.len())]).collect()).expect("valid coloring")
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max: usize) -> BraidWord {
    let len = rng.gen_range(0..=max);
    let letters = (0..len)
        .map(|_| Letter::new(rng.gen_range(0..n - 1), if rng.gen_bool(0.5) { 1 } else { -1 }))
        .collect();
    BraidWord::new(n, letters).expect("indices in range")
}

fn crossing_action(cfg: &VerifyConfig) -> Check {
    let col = |d: usize, ts: &[(usize, usize)]| Coloring::new(d, ts.iter().map(|&(a, b)| t(a, b)).collect());
    let b0 = braid::parse_word("b0", 2)?;
    let b0i = braid::parse_word("b0^-1", 2)?;
    let panels = [
        (&b0, col(3, &[(1, 2), (1, 2)])?, col(3, &[(1, 2), (1, 2)])?),
        (&b0, col(3, &[(1, 2), (2, 3)])?, col(3, &[(1, 3), (1, 2)])?),
        (&b0, col(4, &[(1, 2), (3, 4)])?, col(4, &[(3, 4), (1, 2)])?),
        (&b0i, col(3, &[(1, 3), (1, 2)])?, col(3, &[(1, 2), (2, 3)])?),
    ];
    let panels_ok = panels.iter().all(|(w, c, out)| action::apply(w, c).ok().as_ref() == Some(out));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut failures = 0;
    for _ in 0..cfg.action_pairs {
        let n = rng.gen_range(2..=6);
        let d = rng.gen_range(2..=5);
        let c = random_coloring(&mut rng, d, n);
        let x = random_word(&mut rng, n, 10);
        let i = rng.gen_range(0..n - 1);
        let (l, r) = match rng.gen_range(0..3) {
            0 if n >= 3 && i + 1 < n - 1 => (
                BraidWord::from_pairs(n, &[(i, 1), (i + 1, 1), (i, 1)])?,
                BraidWord::from_pairs(n, &[(i + 1, 1), (i, 1), (i + 1, 1)])?,
            ),
            1 if i + 2 < n - 1 => (
                BraidWord::from_pairs(n, &[(i, 1), (i + 2, 1)])?,
                BraidWord::from_pairs(n, &[(i + 2, 1), (i, 1)])?,
            ),
            _ => (BraidWord::from_pairs(n, &[(i, 1), (i, -1)])?, BraidWord::identity(n)),
        };
        let lhs = action::apply(&x.mul(&l)?, &c)?;
        let rhs = action::apply(&x.mul(&r)?, &c)?;
        let y = random_word(&mut rng, n, 6);
        let composed = action::apply(&x.mul(&y)?, &c)? == action::apply(&y, &action::apply(&x, &c)?)?;
        if lhs != rhs || !composed {
            failures += 1;
        }
    }
    Ok((
        panels_ok && failures == 0,
        format!("panels {}, {} random pairs, {failures} violations", if panels_ok { "ok" } else { "wrong" }, cfg.action_pairs),
    ))
}

fn delta4_six() -> Check {
    let table = action::delta4_table()?;
    let bad: Vec<_> = table.iter().filter(|e| !e.holds).map(|e| e.claim.clone()).collect();
    Ok((bad.is_empty() && table.len() == 18, format!("{} entries, failing {bad:?}", table.len())))
}

/// Vertex names: `ij` for `ρ_{ij}`, `i` for `ρ_i`, `~i` for `ρ̃_i`.
pub fn short_name(c: &Coloring) -> String {
    match covering::as_rho_i(c) {
        Some(s) if s.len() <= 2 => s.iter().map(|i| i.to_string()).collect(),
        Some(s) => {
            let missing: String = (2..c.len()).filter(|i| !s.contains(i)).map(|i| i.to_string()).collect();
            format!("~{missing}")
        }
        None => c.canonical_text(),
    }
}

fn labels(list: &[(&str, &str, &str)]) -> Vec<(String, String, String)> {
    let mut v: Vec<_> = list.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())).collect();
    v.sort();
    v
}

/// Non-loop edges of the two small complexes.
pub fn expected_edges() -> (Vec<(String, String, String)>, Vec<(String, String, String)>) {
    let six = labels(&[
        ("b2", "24", "34"),
        ("b2", "25", "35"),
        ("b3", "23", "24"),
        ("b3", "35", "45"),
        ("b4", "24", "25"),
        ("b4", "34", "35"),
    ]);
    let eight = labels(&[
        ("b2", "2", "3"),
        ("b2", "~2", "~3"),
        ("b3", "3", "4"),
        ("b3", "~3", "~4"),
        ("b4", "4", "5"),
        ("b4", "~4", "~5"),
        ("d4", "2", "~2"),
        ("d4", "3", "~3"),
        ("d4", "4", "~4"),
        ("d4", "5", "~5"),
    ]);
    (six, eight)
}

fn orbits() -> Check {
    let a = OrbitComplex::bw(&covering::rho(6, &[2, 3])?, 1000)?;
    let b = OrbitComplex::bw(&covering::rho_tilde(6, &[4])?, 1000)?;
    let (six, eight) = expected_edges();
    let edges_ok = a.edge_labels(short_name) == six && b.edge_labels(short_name) == eight;
    let mut classes = 0;
    let mut bad = Vec::new();
    for n in 6..=9 {
        for chk in action::verify_orbit_classification(n, 100_000)? {
            classes += 1;
            if !chk.equal {
                bad.push(format!("n={} {}", n, chk.sigma));
            }
        }
    }
    let pass = a.vertex_count() == 6 && b.vertex_count() == 8 && edges_ok && bad.is_empty();
    Ok((
        pass,
        format!(
            "sizes {} and {}, edge labels {}, {classes} monodromy classes for n=6..9, mismatches {bad:?}",
            a.vertex_count(),
            b.vertex_count(),
            if edges_ok { "match" } else { "differ" }
        ),
    ))
}

fn identities() -> Check {
    let mut failed = Vec::new();
    let mut total = 0;
    for n in [8, 10] {
        // Failures are also compared on the homology of the cover they are
        // used for.
        let c = covering::rho(n, &[2, 3, n - 1])?;
        let m = SurfaceModel::build(&c)?;
        for chk in braid::identities_suite(n)?.into_iter().filter(|c| c.exact) {
            total += 1;
            if chk.holds {
                continue;
            }
            let shadow = if action::is_liftable(&chk.lhs, &c)? && action::is_liftable(&chk.rhs, &c)? {
                if m.action(&chk.lhs)? == m.action(&chk.rhs)? {
                    "equal on homology"
                } else {
                    "differ on homology"
                }
            } else {
                "not liftable"
            };
            failed.push(format!("n={n} {} ({shadow})", chk.name));
        }
    }
    Ok((failed.is_empty(), format!("{total} exact identities, failing {failed:?}")))
}

fn cover_rank() -> Check {
    let mut ranks = Vec::new();
    for n in [6, 8, 10, 12] {
        ranks.push((n, SurfaceModel::build(&covering::rho(n, &[2, 3])?)?.rank()));
    }
    let pass = ranks.iter().all(|&(n, r)| r == n - 6);
    Ok((pass, format!("(n, rank) = {ranks:?}")))
}

fn generator_images() -> Check {
    let mut notes = Vec::new();
    let mut pass = true;
    let mut dets = 0;
    for n in [8, 10] {
        let c = covering::rho(n, &[2, 3])?;
        let m = SurfaceModel::build(&c)?;
        let act = |w: &BraidWord| m.action(w);
        let b = |i| BraidWord::gen(n, i, 1);
        let (a0, a2, a4, d4) = (act(&b(0)?)?, act(&b(2)?)?, act(&b(4)?)?, act(&braid::delta4(n)?)?);
        let ok = a0.is_identity() && a2.is_identity() && a4 == d4 && !a4.is_identity();
        pass &= ok;
        notes.push(format!("n={n} b0,b2 trivial and d4=b4 nontrivial: {ok}"));
        let mut words = braid::bw_generator_set(n)?;
        if n >= 10 {
            words.push(braid::delta6(n)?);
        }
        for w in &words {
            if action::is_liftable(w, &c)? {
                dets += 1;
                pass &= act(w)?.det() == 1;
            }
        }
        if n == 10 {
            let d6 = act(&braid::delta6(n)?)?;
            let ok = d6.is_unipotent() && d6.deviation_rank() == 1;
            pass &= ok;
            notes.push(format!("d6 unipotent with rank-one deviation: {ok}"));
        }
    }
    notes.push(format!("det 1 on {dets} liftable generators"));
    Ok((pass, notes.join("; ")))
}

fn kernel() -> Check {
    let n = 10;
    let c = covering::rho(n, &[2, 3])?;
    let m = SurfaceModel::build(&c)?;
    let mut failing: std::collections::BTreeMap<char, (usize, usize)> = Default::default();
    for (name, w) in catalog::kernel_generator_list(n)? {
        let family = name.chars().next().unwrap_or('?');
        let entry = failing.entry(family).or_default();
        entry.0 += 1;
        if !(action::is_liftable(&w, &c)? && m.action(&w)?.is_identity()) {
            entry.1 += 1;
        }
    }
    let b4_nontrivial = !m.action(&BraidWord::gen(n, 4, 1)?)?.is_identity();
    let pass = b4_nontrivial && failing.values().all(|&(_, bad)| bad == 0);
    let summary: Vec<String> = failing
        .iter()
        .map(|(f, (all, bad))| format!("{f}: {bad}/{all} fail"))
        .collect();
    Ok((pass, format!("{}; b4 nontrivial: {b4_nontrivial}", summary.join(", "))))
}

/// A random certificate: a random walk of legal steps from a random
/// colored braid.
fn random_certificate(rng: &mut ChaCha8Rng) -> Result<RewriteCertificate> {
    let n = rng.gen_range(3..=6);
    let d = rng.gen_range(3..=4);
    let c = random_coloring(rng, d, n);
    let w = random_word(rng, n, 8);
    let start = ColoredBraid::new(c.clone(), w)?;
    let mut r = rewrite::Rewriter::new(c, start.word.clone());
    for _ in 0..rng.gen_range(1..=12) {
        let cur = ColoredBraid {
            source: start.source.clone(),
            word: r.word().to_vec(),
        };
        let at = rng.gen_range(0..=cur.word.len());
        let options: Vec<RewriteStep> = rewrite::applicable(&cur, at);
        if options.is_empty() {
            continue;
        }
        r.apply(options[rng.gen_range(0..options.len())])?;
    }
    let (word, steps) = r.into_parts();
    Ok(RewriteCertificate {
        end: ColoredBraid {
            source: start.source.clone(),
            word,
        },
        start,
        steps,
    })
}

fn soundness(cfg: &VerifyConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 9);
    let mut bad_replays = 0;
    let mut moves = 0;
    for _ in 0..cfg.certificates {
        let cert = random_certificate(&mut rng)?;
        moves += cert.local_moves();
        let same_braid_class = cert.start.target() == cert.end.target();
        if !rewrite::replay(&cert)? || !same_braid_class {
            bad_replays += 1;
        }
    }
    // Move invariance of the homology action at n = 8.
    let n = 8;
    let c = covering::rho(n, &[2, 3])?;
    let m = SurfaceModel::build(&c)?;
    // Lassos of the orbit complex generate the liftable words.
    let gens: Vec<BraidWord> = OrbitComplex::bw(&c, 10_000)?
        .schreier_generators()
        .into_iter()
        .map(|l| l.word)
        .collect();
    let mut changed = 0;
    let mut inserted = 0;
    for _ in 0..cfg.liftable_words {
        let mut w = BraidWord::identity(n);
        for _ in 0..rng.gen_range(1..=3) {
            let g = &gens[rng.gen_range(0..gens.len())];
            w = w.mul(&if rng.gen_bool(0.5) { g.clone() } else { g.inverse() })?;
        }
        let cb = ColoredBraid::new(c.clone(), w.clone())?;
        let at = rng.gen_range(0..=w.len());
        let options: Vec<RewriteStep> = rewrite::applicable(&cb, at)
            .into_iter()
            .filter(|s| s.kind.is_local_move())
            .collect();
        if options.is_empty() {
            continue;
        }
        let mut r = rewrite::Rewriter::new(c.clone(), w.letters().to_vec());
        r.apply(options[rng.gen_range(0..options.len())])?;
        let w2 = BraidWord::new(n, r.word().to_vec())?;
        inserted += 1;
        if m.action(&w)? != m.action(&w2)? {
            changed += 1;
        }
    }
    Ok((
        bad_replays == 0 && changed == 0 && inserted > 0,
        format!(
            "{} certificates ({moves} local moves), {bad_replays} rejected; {inserted} move insertions on liftable words, {changed} changed the action",
            cfg.certificates
        ),
    ))
}

fn commutator(cfg: &VerifyConfig) -> Check {
    let n = 6;
    let c = covering::rho(n, &[2, 3])?;
    let d4 = braid::delta4(n)?;
    let b4 = BraidWord::gen(n, 4, 1)?;
    let w = d4.mul(&b4)?.mul(&d4.inverse())?.mul(&b4.inverse())?;
    let closed = SurfaceModel::build(&c)?.action(&w)?.is_identity();
    let relative = RelativeModel::build(&c)?.action(&w)?.is_identity();
    let cert = match rewrite::in_reduced_kernel(&w, &c, cfg.budget)? {
        Outcome::Certified(cert) if rewrite::replay(&cert)? => Some(cert),
        _ => None,
    };
    let detail = match &cert {
        Some(k) => format!(
            "homology trivial {closed}, relative trivial {relative}; certificate of {} steps with {} local moves replays",
            k.steps.len(),
            k.local_moves()
        ),
        None => format!("homology trivial {closed}, relative trivial {relative}; no certificate within budget"),
    };
    Ok((closed && cert.is_some(), detail))
}

fn handle_pair(cfg: &VerifyConfig) -> Check {
    let n = 8;
    let c = covering::rho(n, &[2, 3, n - 1])?;
    let (lhs, literal) = braid::handle_pair(n)?;
    let literal_liftable = action::is_liftable(&lhs, &c)? && action::is_liftable(&literal, &c)?;
    let (lhs, rhs) = braid::handle_pair_to_b3(n)?;
    if !(action::is_liftable(&lhs, &c)? && action::is_liftable(&rhs, &c)?) {
        return Ok((false, "pair is not liftable over rho_{2,3,7}".into()));
    }
    let m = SurfaceModel::build(&c)?;
    let equal = m.action(&lhs)? == m.action(&rhs)?;
    let a = ColoredBraid::new(c.clone(), lhs)?;
    let b = ColoredBraid::new(c.clone(), rhs)?;
    let cert = match rewrite::equivalent(&a, &b, cfg.budget)? {
        Outcome::Certified(k) if rewrite::replay(&k)? => format!("certificate of {} steps replays", k.steps.len()),
        _ => "no certificate within budget".into(),
    };
    Ok((
        equal,
        format!(
            "tail to b4^-1 liftable: {literal_liftable}; tail to b3^-1: equal homology {equal}, {cert}"
        ),
    ))
}

fn moves(cfg: &VerifyConfig) -> Check {
    let mut notes = Vec::new();
    let mut pass = true;
    for (id, widths) in [
        (MoveId::I, vec![8, 10]),
        (MoveId::II, vec![8, 10]),
        (MoveId::III, vec![8, 10]),
        (MoveId::IV, vec![12, 14]),
        (MoveId::V, vec![8, 10]),
    ] {
        for n in widths {
            let ok = catalog::move_lhs(id, n).is_ok();
            pass &= ok;
            if !ok {
                let chk = catalog::check_move(id, n)?;
                notes.push(format!(
                    "{id}@{n} rejected (liftable {}, homology trivial {})",
                    chk.liftable, chk.homology_trivial
                ));
            }
        }
    }
    let budget = Budget {
        states: cfg.budget.states.min(100_000),
        ..cfg.budget
    };
    for id in [MoveId::I, MoveId::V] {
        let d = catalog::derive_move(id, 8, budget)?;
        let ok = matches!(&d, Derivation::Certified(c) if rewrite::replay(c).unwrap_or(false));
        pass &= ok;
        notes.push(match d {
            Derivation::Certified(c) => format!("{id} derived in {} steps", c.steps.len()),
            Derivation::Obstructed { deviation_rank, .. } => {
                format!("{id} underivable: relative action moves a rank-{deviation_rank} part")
            }
            Derivation::Unknown { reason } => format!("{id} unknown: {reason}"),
        });
    }
    if notes.is_empty() {
        notes.push("all moves validated".into());
    }
    Ok((pass, notes.join("; ")))
}

fn census() -> Check {
    let run = || catalog::census(6, 5, &CensusMode::Exhaustive, CensusLimits::default());
    let first = run()?;
    let second = run()?;
    let identical = first.to_json() == second.to_json();
    let sum: usize = first.orbits.iter().map(|o| o.size).sum();
    Ok((
        first.classified_by_monodromy && identical && sum == first.enumerated,
        format!(
            "{} connected colorings in {} orbits, classified by monodromy {}, reruns identical {identical}",
            first.enumerated,
            first.orbits.len(),
            first.classified_by_monodromy
        ),
    ))
}
