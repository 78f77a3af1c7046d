//! Permutations of `{1..d}` and transpositions.
//!
//! Composition is read left to right: `(p·q)(x) = q(p(x))`, the order in
//! which monodromies of concatenated paths multiply.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree the engine accepts.
pub const MAX_DEGREE: usize = 16;

/// A permutation in one-line form: `images[x - 1] = p(x)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (1..=degree as u8).collect(),
        }
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let d = images.len();
        if d == 0 || d > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(d, MAX_DEGREE));
        }
        let mut seen = vec![false; d];
        for &x in &images {
            let x = x as usize;
            if x == 0 || x > d || seen[x - 1] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Image of the label `x` (1-based).
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// `self · other`, i.e. first `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize - 1])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize - 1] = (i + 1) as u8;
        }
        Permutation { images }
    }

    /// Disjoint cycle decomposition, fixed points included. Each cycle starts
    /// at its minimum and cycles are sorted by their minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 1..=d {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// The same permutation viewed in a larger symmetric group.
    pub fn extend(&self, degree: usize) -> Result<Permutation> {
        if degree < self.degree() || degree > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(degree, MAX_DEGREE));
        }
        let mut images = self.images.clone();
        images.extend((self.degree() + 1..=degree).map(|x| x as u8));
        Ok(Permutation { images })
    }

    /// Whether `self` lies in the Klein four-group of `S4`.
    pub fn in_klein_four(&self) -> bool {
        self.degree() == 4 && {
            let cycles = self.cycles();
            self.is_identity() || (cycles.len() == 2 && cycles.iter().all(|c| c.len() == 2))
        }
    }
}

impl TryFrom<Vec<u8>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<u8>) -> Result<Self> {
        Permutation::from_images(v)
    }
}

impl From<Permutation> for Vec<u8> {
    fn from(p: Permutation) -> Vec<u8> {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation without fixed points, `id` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        for c in self.cycles().iter().filter(|c| c.len() > 1) {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// A transposition `(a b)` with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u8; 2]", into = "[u8; 2]")]
pub struct Transposition {
    a: u8,
    b: u8,
}

impl Transposition {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b || a == 0 || b == 0 || a > MAX_DEGREE || b > MAX_DEGREE {
            return Err(Error::InvalidTransposition(a, b, MAX_DEGREE));
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Ok(Transposition {
            a: a as u8,
            b: b as u8,
        })
    }

    /// Panicking constructor for literals in tests and tables.
    pub fn t(a: usize, b: usize) -> Self {
        Self::new(a, b).expect("valid transposition")
    }

    pub fn a(&self) -> usize {
        self.a as usize
    }

    pub fn b(&self) -> usize {
        self.b as usize
    }

    /// Smallest degree containing this transposition.
    pub fn min_degree(&self) -> usize {
        self.b as usize
    }

    pub fn apply(&self, x: usize) -> usize {
        if x == self.a as usize {
            self.b as usize
        } else if x == self.b as usize {
            self.a as usize
        } else {
            x
        }
    }

    pub fn to_permutation(&self, degree: usize) -> Result<Permutation> {
        if self.min_degree() > degree {
            return Err(Error::InvalidTransposition(self.a(), self.b(), degree));
        }
        let mut images: Vec<u8> = (1..=degree as u8).collect();
        images.swap(self.a as usize - 1, self.b as usize - 1);
        Ok(Permutation { images })
    }

    /// `by · self · by`, the color of an under-strand after passing below a
    /// strand colored `by`.
    pub fn conj(&self, by: &Transposition) -> Transposition {
        let a = by.apply(self.a as usize);
        let b = by.apply(self.b as usize);
        Transposition::t(a, b)
    }

    /// Conjugation by an arbitrary permutation: relabel both entries.
    pub fn relabel(&self, p: &Permutation) -> Transposition {
        Transposition::t(p.apply(self.a()), p.apply(self.b()))
    }

    /// Exactly one shared label.
    pub fn interacts(&self, other: &Transposition) -> bool {
        self != other && self.shares_label(other)
    }

    pub fn is_disjoint(&self, other: &Transposition) -> bool {
        !self.shares_label(other)
    }

    fn shares_label(&self, other: &Transposition) -> bool {
        self.a == other.a || self.a == other.b || self.b == other.a || self.b == other.b
    }
}

impl TryFrom<[u8; 2]> for Transposition {
    type Error = Error;
    fn try_from(v: [u8; 2]) -> Result<Self> {
        Transposition::new(v[0] as usize, v[1] as usize)
    }
}

impl From<Transposition> for [u8; 2] {
    fn from(t: Transposition) -> [u8; 2] {
        [t.a, t.b]
    }
}

impl fmt::Debug for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{})", self.a, self.b)
    }
}

/// Compact form `(12)`; labels above 9 are space separated, `(3 11)`.
impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b < 10 {
            write!(f, "({}{})", self.a, self.b)
        } else {
            write!(f, "({} {})", self.a, self.b)
        }
    }
}

/// Accepts `(a b)`, `(a,b)` and, for single-digit labels, `(ab)`.
impl FromStr for Transposition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("transposition {s:?}")))?;
        let parts: Vec<&str> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .collect();
        let nums: Vec<usize> = match parts.as_slice() {
            [single] if single.len() == 2 => single
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Parse(format!("transposition {s:?}")))?,
            _ => parts
                .iter()
                .map(|p| p.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("transposition {s:?}")))?,
        };
        match nums.as_slice() {
            [a, b] => Transposition::new(*a, *b),
            _ => Err(Error::Parse(format!("transposition {s:?}"))),
        }
    }
}

/// Index in `{1,2,3}` of the pairing of `{1,2,3,4}` containing `{x, y}`:
/// `{12|34} -> 3`, `{14|23} -> 1`, `{13|24} -> 2`.
fn pairing_label(x: usize, y: usize) -> usize {
    let (x, y) = if x < y { (x, y) } else { (y, x) };
    match (x, y) {
        (1, 2) | (3, 4) => 3,
        (1, 4) | (2, 3) => 1,
        (1, 3) | (2, 4) => 2,
        _ => unreachable!("labels of S4"),
    }
}

/// The exceptional map `S4 -> S3` on transpositions: opposite edges of the
/// tetrahedron collapse onto the front face.
pub fn kappa(t: &Transposition) -> Result<Transposition> {
    if t.min_degree() > 4 {
        return Err(Error::NotS4(t.min_degree()));
    }
    let image = match (t.a(), t.b()) {
        (1, 2) | (3, 4) => (1, 2),
        (2, 3) | (1, 4) => (2, 3),
        (1, 3) | (2, 4) => (1, 3),
        _ => unreachable!(),
    };
    Ok(Transposition::t(image.0, image.1))
}

/// The same homomorphism on all of `S4`, via the action on the three
/// pairings of `{1,2,3,4}`. Its kernel is the Klein four-group.
pub fn kappa_perm(p: &Permutation) -> Result<Permutation> {
    if p.degree() != 4 {
        return Err(Error::NotS4(p.degree()));
    }
    let reps = [(1usize, 4usize), (1, 3), (1, 2)];
    let mut images = vec![0u8; 3];
    for (label, (x, y)) in reps.iter().enumerate() {
        images[label] = pairing_label(p.apply(*x), p.apply(*y)) as u8;
    }
    Permutation::from_images(images)
}

/// Product of a sequence of transpositions in `S_d`, left to right.
pub fn product<'a, I>(degree: usize, ts: I) -> Result<Permutation>
where
    I: IntoIterator<Item = &'a Transposition>,
{
    let mut acc: Vec<u8> = (1..=degree as u8).collect();
    for t in ts {
        if t.min_degree() > degree {
            return Err(Error::InvalidTransposition(t.a(), t.b(), degree));
        }
        for x in acc.iter_mut() {
            *x = t.apply(*x as usize) as u8;
        }
    }
    Ok(Permutation { images: acc })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(a: usize, b: usize) -> Permutation {
        Transposition::t(a, b).to_permutation(4).unwrap()
    }

    #[test]
    fn involution_composes_to_identity() {
        assert!(tp(1, 2).compose(&tp(1, 2)).unwrap().is_identity());
    }

    #[test]
    fn composition_is_left_to_right() {
        let p = tp(1, 2).compose(&tp(2, 3)).unwrap();
        assert_eq!(p.apply(1), 3);
        assert_eq!(p.apply(3), 2);
        assert_eq!(p.apply(2), 1);
        assert_eq!(
            p.cycles(),
            vec![vec![1, 3, 2], vec![4]],
            "one 3-cycle and a fixed point"
        );
    }

    #[test]
    fn interacting_pair_gives_three_cycle() {
        // (12)(14)(23)(23): the (23) pair cancels; by hand 1->2, 2->1->4, 4->1.
        let p = product(4, &[
            Transposition::t(1, 2),
            Transposition::t(1, 4),
            Transposition::t(2, 3),
            Transposition::t(2, 3),
        ])
        .unwrap();
        assert_eq!(p.cycles(), vec![vec![1, 2, 4], vec![3]]);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert_eq!(p.compose(&q), Err(Error::DegreeMismatch(3, 4)));
    }

    #[test]
    fn conj_examples() {
        let t = Transposition::t;
        assert_eq!(t(2, 3).conj(&t(1, 2)), t(1, 3));
        assert_eq!(t(3, 4).conj(&t(1, 2)), t(3, 4));
        assert_eq!(t(1, 4).conj(&t(1, 2)), t(2, 4));
    }

    #[test]
    fn kappa_table() {
        let t = Transposition::t;
        let table = [
            (t(1, 2), t(1, 2)),
            (t(3, 4), t(1, 2)),
            (t(2, 3), t(2, 3)),
            (t(1, 4), t(2, 3)),
            (t(1, 3), t(1, 3)),
            (t(2, 4), t(1, 3)),
        ];
        for (x, y) in table {
            assert_eq!(kappa(&x).unwrap(), y, "kappa{x}");
            assert_eq!(
                kappa_perm(&x.to_permutation(4).unwrap()).unwrap(),
                y.to_permutation(3).unwrap()
            );
        }
        assert_eq!(kappa(&t(1, 5)), Err(Error::NotS4(5)));
    }

    #[test]
    fn cycles_of_examples() {
        assert_eq!(
            Permutation::identity(4).cycles(),
            vec![vec![1], vec![2], vec![3], vec![4]]
        );
        let p = tp(1, 4).compose(&tp(2, 3)).unwrap();
        assert_eq!(p.cycles(), vec![vec![1, 4], vec![2, 3]]);
        assert_eq!(p.to_string(), "(1 4)(2 3)");
    }

    #[test]
    fn parse_forms() {
        let t = Transposition::t(1, 2);
        assert_eq!("(12)".parse::<Transposition>().unwrap(), t);
        assert_eq!("(1 2)".parse::<Transposition>().unwrap(), t);
        assert_eq!("(2,1)".parse::<Transposition>().unwrap(), t);
        assert_eq!("(3 11)".parse::<Transposition>().unwrap(), Transposition::t(3, 11));
        assert!("(1 1)".parse::<Transposition>().is_err());
        assert!("12".parse::<Transposition>().is_err());
    }

    #[test]
    fn json_forms() {
        let t = Transposition::t(1, 4);
        assert_eq!(serde_json::to_string(&t).unwrap(), "[1,4]");
        let p: Permutation = serde_json::from_str("[2,1,3]").unwrap();
        assert_eq!(p.apply(1), 2);
        assert!(serde_json::from_str::<Permutation>("[1,1,3]").is_err());
    }

    #[test]
    fn klein_four_membership() {
        let v: Vec<Permutation> = all_perms(4).into_iter().filter(|p| p.in_klein_four()).collect();
        assert_eq!(v.len(), 4);
    }

    pub(crate) fn all_perms(d: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<u8>, d: usize, out: &mut Vec<Permutation>) {
            if prefix.len() == d {
                out.push(Permutation::from_images(prefix.clone()).unwrap());
                return;
            }
            for x in 1..=d as u8 {
                if !prefix.contains(&x) {
                    prefix.push(x);
                    rec(prefix, d, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), d, &mut out);
        out
    }

    #[test]
    fn kappa_fibres_are_klein_cosets() {
        let perms = all_perms(4);
        for p in &perms {
            for q in &perms {
                let same = kappa_perm(p).unwrap() == kappa_perm(q).unwrap();
                let coset = p.compose(&q.inverse()).unwrap().in_klein_four();
                assert_eq!(same, coset, "{p} {q}");
            }
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn perm(d: usize) -> impl Strategy<Value = Permutation> {
            Just((1..=d as u8).collect::<Vec<u8>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap())
        }

        fn transposition(d: usize) -> impl Strategy<Value = Transposition> {
            (1..=d, 1..=d)
                .prop_filter("distinct", |(a, b)| a != b)
                .prop_map(|(a, b)| Transposition::t(a, b))
        }

        proptest! {
            #[test]
            fn inverse_cancels(p in perm(7)) {
                prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
                prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
            }

            #[test]
            fn conj_is_an_involution(t in transposition(6), u in transposition(6)) {
                prop_assert_eq!(t.conj(&u).conj(&u), t);
                let lhs = t.conj(&u).to_permutation(6).unwrap();
                let up = u.to_permutation(6).unwrap();
                let rhs = up.then(&t.to_permutation(6).unwrap()).then(&up);
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn kappa_respects_conjugation(t in transposition(4), u in transposition(4)) {
                let lhs = kappa(&u.conj(&t)).unwrap();
                let rhs = kappa(&u).unwrap().conj(&kappa(&t).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
