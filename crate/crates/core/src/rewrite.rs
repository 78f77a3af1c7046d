//! The reduced groupoid: colored braids modulo the local moves `M` and `P`
//! and braid isotopy, with replayable certificates.
//!
//! `M` inserts or deletes `β_i^{±3}` where the two strands carry interacting
//! colors, `P` inserts or deletes `β_i^{±2}` where they carry disjoint colors.
//! Neither changes the coloring at any later point of the word.

use std::collections::{BinaryHeap, HashMap};
use std::cmp::Reverse;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::action::{apply_letter, ColoredBraid};
use crate::braid::{BraidWord, Letter};
use crate::covering::Coloring;
use crate::error::{Error, Result};
use crate::perm::Transposition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StepKind {
    FreeCancel,
    FreeInsert,
    FarComm,
    BraidRel,
    MInsert,
    MDelete,
    PInsert,
    PDelete,
}

impl StepKind {
    pub fn is_local_move(self) -> bool {
        matches!(
            self,
            StepKind::MInsert | StepKind::MDelete | StepKind::PInsert | StepKind::PDelete
        )
    }
}

/// One elementary rewrite at letter position `pos`.
///
/// `i` and `exp` name the generator involved: the inserted or deleted letter
/// for insertions and deletions, the letter at `pos` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RewriteStep {
    pub kind: StepKind,
    pub pos: usize,
    pub i: usize,
    pub exp: i8,
}

impl RewriteStep {
    pub fn new(kind: StepKind, pos: usize, i: usize, exp: i8) -> Self {
        RewriteStep { kind, pos, i, exp }
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{} b{}^{}", self.kind, self.pos, self.i, self.exp)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteCertificate {
    pub start: ColoredBraid,
    pub steps: Vec<RewriteStep>,
    pub end: ColoredBraid,
}

impl RewriteCertificate {
    pub fn count(&self, kind: StepKind) -> usize {
        self.steps.iter().filter(|s| s.kind == kind).count()
    }

    pub fn local_moves(&self) -> usize {
        self.steps.iter().filter(|s| s.kind.is_local_move()).count()
    }

    /// Run this rewrite on the segment of `outer` starting at letter `at`.
    pub fn embed(&self, outer: &ColoredBraid, at: usize) -> Result<RewriteCertificate> {
        let len = self.start.word.len();
        if outer.word.get(at..at + len) != Some(&self.start.word[..])
            || outer.source.degree() != self.start.source.degree()
            || running_colors(&outer.source, &outer.word, at) != self.start.source.colors()
        {
            return Err(Error::PatternMismatch("certificate does not fit at this position".into()));
        }
        let mut r = Rewriter::new(outer.source.clone(), outer.word.clone());
        for s in &self.steps {
            r.apply(RewriteStep { pos: s.pos + at, ..*s })?;
        }
        let (word, steps) = r.into_parts();
        Ok(RewriteCertificate {
            start: outer.clone(),
            steps,
            end: ColoredBraid {
                source: outer.source.clone(),
                word,
            },
        })
    }

    /// This rewrite followed by `next`.
    pub fn then(mut self, next: &RewriteCertificate) -> Result<RewriteCertificate> {
        if self.end != next.start {
            return Err(Error::PatternMismatch("certificates do not compose".into()));
        }
        self.steps.extend_from_slice(&next.steps);
        self.end = next.end.clone();
        Ok(self)
    }

    /// The empty rewrite of `cb`.
    pub fn identity(cb: &ColoredBraid) -> RewriteCertificate {
        RewriteCertificate {
            start: cb.clone(),
            steps: Vec::new(),
            end: cb.clone(),
        }
    }

    /// The same rewrite read backwards, from `end` to `start`.
    pub fn reversed(&self) -> Result<RewriteCertificate> {
        let mut w = Rewriter::new(self.start.source.clone(), self.start.word.clone());
        let mut undo = Vec::with_capacity(self.steps.len());
        for &s in &self.steps {
            let before = w.word.clone();
            w.apply(s)?;
            undo.push(inverse_step(&before, s));
        }
        undo.reverse();
        Ok(RewriteCertificate {
            start: self.end.clone(),
            steps: undo,
            end: self.start.clone(),
        })
    }
}

fn inverse_step(before: &[Letter], s: RewriteStep) -> RewriteStep {
    use StepKind::*;
    match s.kind {
        FreeCancel => RewriteStep::new(FreeInsert, s.pos, s.i, s.exp),
        FreeInsert => RewriteStep::new(FreeCancel, s.pos, s.i, s.exp),
        FarComm => {
            let next = before[s.pos + 1];
            RewriteStep::new(FarComm, s.pos, next.i(), next.exp)
        }
        BraidRel => {
            let (a, b) = (before[s.pos], before[s.pos + 1]);
            let (_, first) = braid_partner(a, b, before[s.pos + 2]).expect("applied step");
            let _ = b;
            RewriteStep::new(BraidRel, s.pos, first.i(), first.exp)
        }
        MInsert => RewriteStep::new(MDelete, s.pos, s.i, s.exp),
        MDelete => RewriteStep::new(MInsert, s.pos, s.i, s.exp),
        PInsert => RewriteStep::new(PDelete, s.pos, s.i, s.exp),
        PDelete => RewriteStep::new(PInsert, s.pos, s.i, s.exp),
    }
}

/// The partner of a three-letter window `x_i^a x_j^b x_i^c`, `|i-j| = 1`,
/// under the braid relation, if the window has one.
fn braid_partner(x: Letter, y: Letter, z: Letter) -> Option<([Letter; 3], Letter)> {
    if x.index != z.index || x.i().abs_diff(y.i()) != 1 {
        return None;
    }
    let (i, j) = (x.i(), y.i());
    let (a, b, c) = (x.exp, y.exp, z.exp);
    let out = if a == b && b == c {
        [Letter::new(j, a), Letter::new(i, a), Letter::new(j, a)]
    } else if c == -a {
        [Letter::new(j, -a), Letter::new(i, b), Letter::new(j, a)]
    } else {
        return None;
    };
    Some((out, out[0]))
}

fn running_colors(source: &Coloring, word: &[Letter], pos: usize) -> Vec<Transposition> {
    let mut colors = source.colors().to_vec();
    for &l in &word[..pos] {
        apply_letter(&mut colors, l);
    }
    colors
}

fn pair_kind(colors: &[Transposition], i: usize) -> PairKind {
    let (a, b) = (colors[i], colors[i + 1]);
    if a == b {
        PairKind::Equal
    } else if a.interacts(&b) {
        PairKind::Interacting
    } else {
        PairKind::Disjoint
    }
}

/// How the colors of two adjacent strands relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Equal,
    Interacting,
    Disjoint,
}

impl PairKind {
    /// The power of `β_i` removable by a local move, if any.
    pub fn move_power(self) -> Option<usize> {
        match self {
            PairKind::Interacting => Some(3),
            PairKind::Disjoint => Some(2),
            PairKind::Equal => None,
        }
    }
}

/// A colored braid being rewritten, with the log of applied steps.
#[derive(Clone, Debug)]
pub struct Rewriter {
    source: Coloring,
    word: Vec<Letter>,
    log: Vec<RewriteStep>,
}

impl Rewriter {
    pub fn new(source: Coloring, word: Vec<Letter>) -> Self {
        Rewriter {
            source,
            word,
            log: Vec::new(),
        }
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn steps(&self) -> &[RewriteStep] {
        &self.log
    }

    pub fn into_parts(self) -> (Vec<Letter>, Vec<RewriteStep>) {
        (self.word, self.log)
    }

    fn strands(&self) -> usize {
        self.source.len()
    }

    fn fail(&self, s: RewriteStep, why: &str) -> Error {
        Error::MalformedCertificate(format!("step {} ({s}): {why}", self.log.len()))
    }

    /// Apply one step after checking that it is legal here.
    pub fn apply(&mut self, s: RewriteStep) -> Result<()> {
        use StepKind::*;
        let len = self.word.len();
        let letter = Letter::new(s.i, s.exp.signum());
        if s.exp.abs() != 1 || s.i + 1 >= self.strands() {
            return Err(self.fail(s, "bad generator"));
        }
        let at = |k: usize| self.word.get(k).copied();
        match s.kind {
            FreeCancel => {
                if at(s.pos) != Some(letter) || at(s.pos + 1) != Some(letter.inverse()) {
                    return Err(self.fail(s, "no cancelling pair"));
                }
                self.word.drain(s.pos..s.pos + 2);
            }
            FreeInsert => {
                if s.pos > len {
                    return Err(self.fail(s, "position out of range"));
                }
                self.word.splice(s.pos..s.pos, [letter, letter.inverse()]);
            }
            FarComm => match (at(s.pos), at(s.pos + 1)) {
                (Some(x), Some(y)) if x == letter && x.i().abs_diff(y.i()) >= 2 => {
                    self.word.swap(s.pos, s.pos + 1)
                }
                _ => return Err(self.fail(s, "letters do not commute")),
            },
            BraidRel => {
                let window = (at(s.pos), at(s.pos + 1), at(s.pos + 2));
                let (Some(x), Some(y), Some(z)) = window else {
                    return Err(self.fail(s, "window out of range"));
                };
                match braid_partner(x, y, z) {
                    Some((out, _)) if x == letter => {
                        self.word[s.pos..s.pos + 3].copy_from_slice(&out);
                    }
                    _ => return Err(self.fail(s, "no braid relation applies")),
                }
            }
            MInsert | PInsert => {
                if s.pos > len {
                    return Err(self.fail(s, "position out of range"));
                }
                let power = self.power_at(s)?;
                self.word.splice(s.pos..s.pos, std::iter::repeat_n(letter, power));
            }
            MDelete | PDelete => {
                let power = self.power_at(s)?;
                if s.pos + power > len || self.word[s.pos..s.pos + power].iter().any(|&l| l != letter) {
                    return Err(self.fail(s, "no such power to delete"));
                }
                self.word.drain(s.pos..s.pos + power);
            }
        }
        self.log.push(s);
        Ok(())
    }

    fn power_at(&self, s: RewriteStep) -> Result<usize> {
        let need = if matches!(s.kind, StepKind::MInsert | StepKind::MDelete) {
            PairKind::Interacting
        } else {
            PairKind::Disjoint
        };
        if s.pos > self.word.len() {
            return Err(self.fail(s, "position out of range"));
        }
        let colors = running_colors(&self.source, &self.word, s.pos);
        let kind = pair_kind(&colors, s.i);
        if kind != need {
            return Err(self.fail(s, &format!("strand colors are {kind:?}")));
        }
        Ok(kind.move_power().expect("not equal"))
    }

    fn step(&mut self, kind: StepKind, pos: usize, l: Letter) {
        self.apply(RewriteStep::new(kind, pos, l.i(), l.exp))
            .expect("internally generated step is legal");
    }

    /// Replace the letter at `pos` by `β_i^{e-k}` with `k` the local power,
    /// using one move and a free cancellation. Returns the new letter count.
    fn flip(&mut self, pos: usize) -> Result<usize> {
        let l = self.word[pos];
        let colors = running_colors(&self.source, &self.word, pos + 1);
        let (kind, power) = match pair_kind(&colors, l.i()) {
            PairKind::Interacting => (StepKind::MInsert, 3),
            PairKind::Disjoint => (StepKind::PInsert, 2),
            PairKind::Equal => return Err(Error::PatternMismatch("equal colors".into())),
        };
        self.step(kind, pos + 1, l.inverse());
        self.step(StepKind::FreeCancel, pos, l);
        Ok(power - 1)
    }

    fn free_reduce(&mut self) {
        let mut k = 0;
        while k + 1 < self.word.len() {
            if self.word[k + 1] == self.word[k].inverse() {
                let l = self.word[k];
                self.step(StepKind::FreeCancel, k, l);
                k = k.saturating_sub(1);
            } else {
                k += 1;
            }
        }
    }

    /// Dehornoy handle reduction, logged as elementary steps. Returns
    /// `false` when `cap` steps were spent before the word became
    /// handle-free. A handle-free word is empty exactly when it represents
    /// the trivial braid.
    pub fn reduce_handles(&mut self, cap: usize) -> bool {
        let budget = self.log.len() + cap;
        self.free_reduce();
        while let Some((p, q)) = first_handle(&self.word) {
            if self.log.len() > budget {
                return false;
            }
            let h = self.word[p];
            let i = h.i();
            let mut cur = p;
            let mut end = q;
            while cur + 1 < end {
                let next = self.word[cur + 1];
                if next.i().abs_diff(i) >= 2 {
                    self.step(StepKind::FarComm, cur, h);
                    cur += 1;
                } else {
                    // σ_i^e σ_{i+1}^d  →  σ_{i+1}^{-e} σ_i^d σ_{i+1}^e σ_i^e
                    debug_assert_eq!(next.i(), i + 1);
                    self.step(StepKind::FreeInsert, cur + 2, h.inverse());
                    self.step(StepKind::BraidRel, cur, h);
                    cur += 3;
                    end += 2;
                }
            }
            self.step(StepKind::FreeCancel, cur, h);
        }
        true
    }
}

/// The handle `(p, q)` closing first: `σ_i^e u σ_i^{-e}` with no `σ_i`,
/// `σ_{i-1}` in `u`. Such a handle contains no other handle.
fn first_handle(word: &[Letter]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for p in 0..word.len() {
        let h = word[p];
        let limit = best.map_or(word.len(), |(_, q)| q);
        for q in p + 1..limit {
            let l = word[q];
            if l.index == h.index {
                if l.exp == -h.exp {
                    best = Some((p, q));
                }
                break;
            }
            if l.i() + 1 == h.i() {
                break;
            }
        }
    }
    best
}

/// Whether `w` is the trivial braid, by handle reduction. `None` if the step
/// cap is hit.
pub fn trivial_by_handles(w: &[Letter], cap: usize) -> Option<bool> {
    let strands = w.iter().map(|l| l.i() + 2).max().unwrap_or(2);
    let plain = Coloring::new(2, vec![Transposition::t(1, 2); strands]).expect("valid coloring");
    let mut r = Rewriter::new(plain, w.to_vec());
    r.reduce_handles(cap).then(|| r.word.is_empty())
}

/// Every step legal at letter position `at`.
pub fn applicable(cb: &ColoredBraid, at: usize) -> Vec<RewriteStep> {
    use StepKind::*;
    let word = &cb.word;
    let n = cb.source.len();
    let mut out = Vec::new();
    if at > word.len() {
        return out;
    }
    let colors = running_colors(&cb.source, word, at);
    for i in 0..n.saturating_sub(1) {
        for e in [1i8, -1] {
            out.push(RewriteStep::new(FreeInsert, at, i, e));
            let l = Letter::new(i, e);
            match pair_kind(&colors, i) {
                PairKind::Interacting => {
                    out.push(RewriteStep::new(MInsert, at, i, e));
                    if word.get(at..at + 3).is_some_and(|s| s.iter().all(|&x| x == l)) {
                        out.push(RewriteStep::new(MDelete, at, i, e));
                    }
                }
                PairKind::Disjoint => {
                    out.push(RewriteStep::new(PInsert, at, i, e));
                    if word.get(at..at + 2).is_some_and(|s| s.iter().all(|&x| x == l)) {
                        out.push(RewriteStep::new(PDelete, at, i, e));
                    }
                }
                PairKind::Equal => {}
            }
        }
    }
    if let Some(&x) = word.get(at) {
        if let Some(&y) = word.get(at + 1) {
            if y == x.inverse() {
                out.push(RewriteStep::new(FreeCancel, at, x.i(), x.exp));
            }
            if x.i().abs_diff(y.i()) >= 2 {
                out.push(RewriteStep::new(FarComm, at, x.i(), x.exp));
            }
            if let Some(&z) = word.get(at + 2) {
                if braid_partner(x, y, z).is_some() {
                    out.push(RewriteStep::new(BraidRel, at, x.i(), x.exp));
                }
            }
        }
    }
    out.sort();
    out
}

/// Replay a certificate. `Ok(false)` when a step is illegal or the end does
/// not match; `Err` when the certificate is structurally malformed.
pub fn replay(cert: &RewriteCertificate) -> Result<bool> {
    let n = cert.start.source.len();
    for cb in [&cert.start, &cert.end] {
        if cb.source.len() != n || cb.word.iter().any(|l| l.i() + 1 >= n || l.exp.abs() != 1) {
            return Err(Error::MalformedCertificate("endpoint is not a colored braid".into()));
        }
    }
    if cert.start.source != cert.end.source {
        return Ok(false);
    }
    let mut r = Rewriter::new(cert.start.source.clone(), cert.start.word.clone());
    for &s in &cert.steps {
        if r.apply(s).is_err() {
            return Ok(false);
        }
    }
    Ok(r.word == cert.end.word)
}

/// Search limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of local moves on a search path.
    pub depth: usize,
    /// Maximum word length on a search path.
    pub length: usize,
    /// Maximum number of visited states.
    pub states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            depth: 24,
            length: 64,
            states: 10_000_000,
        }
    }
}

/// Result of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Certified(RewriteCertificate),
    /// The budget ran out; says nothing about inequivalence.
    Unknown { states: usize },
}

impl Outcome {
    pub fn certificate(&self) -> Option<&RewriteCertificate> {
        match self {
            Outcome::Certified(c) => Some(c),
            Outcome::Unknown { .. } => None,
        }
    }
}

const HANDLE_CAP: usize = 200_000;

/// Search for a certificate rewriting `cb1` into `cb2`.
///
/// The loop `cb1·cb2⁻¹` is driven to a braid-trivial word by local moves,
/// then emptied by handle reduction. Local moves are tried as sign changes
/// of single letters (`β^e → β^{e∓k}` with `k` the local power), explored
/// best-first by word length.
pub fn equivalent(cb1: &ColoredBraid, cb2: &ColoredBraid, budget: Budget) -> Result<Outcome> {
    if cb1.source != cb2.source || cb1.target() != cb2.target() {
        return Err(Error::ColoringMismatch);
    }
    let source = cb1.source.clone();
    // cb1 → cb1·cb2⁻¹·cb2
    let mut r = Rewriter::new(source.clone(), cb1.word.clone());
    let base = cb1.word.len();
    for (k, &l) in cb2.word.iter().rev().enumerate() {
        r.step(StepKind::FreeInsert, base + k, l.inverse());
    }
    let loop_len = base + cb2.word.len();
    let lp = ColoredBraid {
        source: source.clone(),
        word: r.word[..loop_len].to_vec(),
    };
    let outcome = to_identity(&lp, budget)?;
    let Outcome::Certified(cert) = outcome else {
        return Ok(outcome);
    };
    // The loop certificate acts on a prefix; the suffix cb2 rides along.
    for &s in &cert.steps {
        r.apply(s)?;
    }
    let (word, steps) = r.into_parts();
    debug_assert_eq!(word, cb2.word);
    Ok(Outcome::Certified(RewriteCertificate {
        start: cb1.clone(),
        steps,
        end: ColoredBraid {
            source,
            word,
        },
    }))
}

/// Search for a certificate from a loop to the empty word.
fn to_identity(lp: &ColoredBraid, budget: Budget) -> Result<Outcome> {
    let source = &lp.source;
    let start = lp.word.clone();
    let finish = |path: Vec<RewriteStep>, word: &[Letter]| -> Option<RewriteCertificate> {
        let mut r = Rewriter::new(source.clone(), start.clone());
        for s in path {
            r.apply(s).ok()?;
        }
        debug_assert_eq!(r.word, word);
        if !r.reduce_handles(HANDLE_CAP) || !r.word.is_empty() {
            return None;
        }
        let (_, steps) = r.into_parts();
        Some(RewriteCertificate {
            start: lp.clone(),
            steps,
            end: ColoredBraid {
                source: source.clone(),
                word: Vec::new(),
            },
        })
    };
    if trivial_by_handles(&start, HANDLE_CAP) == Some(true) {
        return Ok(finish(Vec::new(), &start).map_or(Outcome::Unknown { states: 1 }, Outcome::Certified));
    }
    // Best-first over single-letter flips. A state remembers its parent and
    // the flip that produced it; flips never change the running colors.
    struct Node {
        word: Vec<Letter>,
        parent: usize,
        steps: Vec<RewriteStep>,
        moves: usize,
    }
    let mut nodes = vec![Node {
        word: start.clone(),
        parent: usize::MAX,
        steps: Vec::new(),
        moves: 0,
    }];
    let mut seen: HashMap<Vec<Letter>, usize> = HashMap::new();
    seen.insert(start.clone(), 0);
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((start.len(), 0usize, 0usize)));
    while let Some(Reverse((_, _, id))) = heap.pop() {
        if seen.len() >= budget.states {
            break;
        }
        if nodes[id].moves >= budget.depth {
            continue;
        }
        for pos in 0..nodes[id].word.len() {
            let mut r = Rewriter::new(source.clone(), nodes[id].word.clone());
            if r.flip(pos).is_err() {
                continue;
            }
            r.free_reduce();
            let (word, steps) = r.into_parts();
            if word.len() > budget.length || seen.contains_key(&word) {
                continue;
            }
            let child = nodes.len();
            seen.insert(word.clone(), child);
            nodes.push(Node {
                word: word.clone(),
                parent: id,
                steps,
                moves: nodes[id].moves + 1,
            });
            if trivial_by_handles(&word, HANDLE_CAP) == Some(true) {
                let mut chain = Vec::new();
                let mut cur = child;
                while cur != 0 {
                    chain.push(cur);
                    cur = nodes[cur].parent;
                }
                let path: Vec<RewriteStep> =
                    chain.iter().rev().flat_map(|&c| nodes[c].steps.clone()).collect();
                if let Some(cert) = finish(path, &word) {
                    return Ok(Outcome::Certified(cert));
                }
            }
            heap.push(Reverse((word.len(), child, child)));
        }
    }
    Ok(Outcome::Unknown { states: seen.len() })
}

/// `equivalent(⟨c, w⟩, ⟨c, e⟩)` for a liftable `w`.
pub fn in_reduced_kernel(w: &BraidWord, c: &Coloring, budget: Budget) -> Result<Outcome> {
    if !crate::action::is_liftable(w, c)? {
        return Err(Error::NotLiftable);
    }
    let cb = ColoredBraid::new(c.clone(), w.clone())?;
    let id = ColoredBraid::new(c.clone(), BraidWord::identity(w.strands()))?;
    equivalent(&cb, &id, budget)
}
