//! Colorings of the punctured disk, i.e. simple branched coverings given by
//! the monodromy of each branch point.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{self, kappa, Permutation, Transposition, MAX_DEGREE};

/// A degree `d` plus one transposition of `S_d` per branch point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawColoring", into = "RawColoring")]
pub struct Coloring {
    degree: usize,
    colors: Vec<Transposition>,
}

#[derive(Serialize, Deserialize)]
struct RawColoring {
    degree: usize,
    colors: Vec<Transposition>,
}

impl TryFrom<RawColoring> for Coloring {
    type Error = Error;
    fn try_from(raw: RawColoring) -> Result<Self> {
        Coloring::new(raw.degree, raw.colors)
    }
}

impl From<Coloring> for RawColoring {
    fn from(c: Coloring) -> RawColoring {
        RawColoring {
            degree: c.degree,
            colors: c.colors,
        }
    }
}

impl Coloring {
    pub fn new(degree: usize, colors: Vec<Transposition>) -> Result<Self> {
        if !(2..=MAX_DEGREE).contains(&degree) {
            return Err(Error::DegreeOutOfRange(degree, MAX_DEGREE));
        }
        if colors.is_empty() {
            return Err(Error::InvalidColoring("no branch points".into()));
        }
        if let Some(t) = colors.iter().find(|t| t.min_degree() > degree) {
            return Err(Error::InvalidTransposition(t.a(), t.b(), degree));
        }
        Ok(Coloring { degree, colors })
    }

    pub(crate) fn from_parts_unchecked(degree: usize, colors: Vec<Transposition>) -> Self {
        Coloring { degree, colors }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of branch points.
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors(&self) -> &[Transposition] {
        &self.colors
    }

    pub(crate) fn colors_mut(&mut self) -> &mut [Transposition] {
        &mut self.colors
    }

    pub fn boundary_monodromy(&self) -> Permutation {
        perm::product(self.degree, &self.colors).expect("colors fit the degree")
    }

    /// Whether the colors generate a transitive subgroup.
    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..=self.degree).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for t in &self.colors {
            let (ra, rb) = (find(&mut parent, t.a()), find(&mut parent, t.b()));
            parent[ra] = rb;
        }
        let root = find(&mut parent, 1);
        (2..=self.degree).all(|x| find(&mut parent, x) == root)
    }

    /// Membership in `C^n`: first two colors `(12)` and connected.
    pub fn in_standard_class(&self) -> bool {
        let r = Transposition::t(1, 2);
        self.len() >= 2 && self.colors[0] == r && self.colors[1] == r && self.is_connected()
    }

    /// Apply `κ` to every color of a degree-4 coloring.
    pub fn dim_lights(&self) -> Result<Coloring> {
        if self.degree != 4 {
            return Err(Error::NotS4(self.degree));
        }
        let colors = self
            .colors
            .iter()
            .map(kappa)
            .collect::<Result<Vec<_>>>()?;
        Ok(Coloring { degree: 3, colors })
    }

    /// Add a trivial sheet `d+1`, attached to sheet `j` through two new branch
    /// points colored `(j, d+1)`.
    pub fn stabilize(&self, j: usize) -> Result<Coloring> {
        if j == 0 || j > self.degree {
            return Err(Error::LabelOutOfRange(j, self.degree));
        }
        if self.degree + 1 > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(self.degree + 1, MAX_DEGREE));
        }
        let t = Transposition::t(j, self.degree + 1);
        let mut colors = self.colors.clone();
        colors.push(t);
        colors.push(t);
        Ok(Coloring {
            degree: self.degree + 1,
            colors,
        })
    }

    /// The same coloring viewed in a larger symmetric group.
    pub fn with_degree(&self, degree: usize) -> Result<Coloring> {
        if degree < self.degree {
            return Err(Error::DegreeMismatch(self.degree, degree));
        }
        Coloring::new(degree, self.colors.clone())
    }

    /// Canonical text, e.g. `d=4: (12)(12)(14)(14)(23)(23)`.
    pub fn canonical_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={}: ", self.degree)?;
        for t in &self.colors {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Parses either the canonical text or one of the named seeds understood by
/// [`StandardFamily::from_str`].
impl FromStr for Coloring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()));
        }
        if let Some(rest) = s.strip_prefix("d=") {
            let (deg, body) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("coloring {s:?}")))?;
            let degree: usize = deg
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("degree in {s:?}")))?;
            let mut colors = Vec::new();
            let mut rest = body.trim();
            while !rest.is_empty() {
                let end = rest
                    .find(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed transposition in {s:?}")))?;
                colors.push(rest[..=end].parse::<Transposition>()?);
                rest = rest[end + 1..].trim_start();
            }
            return Coloring::new(degree, colors);
        }
        s.parse::<StandardFamily>()?.build()
    }
}

/// The standard families of colorings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StandardFamily {
    /// Degree 3: `(12),(12),(23),…,(23)`.
    Rho3 { n: usize },
    /// Degree 4: `(12)` at positions 0 and 1, `(14)` on `I`, `(23)` elsewhere.
    RhoI { n: usize, set: BTreeSet<usize> },
    /// `RhoI` with `(14)` and `(23)` exchanged.
    RhoTildeI { n: usize, set: BTreeSet<usize> },
}

impl StandardFamily {
    pub fn build(&self) -> Result<Coloring> {
        match self {
            StandardFamily::Rho3 { n } => rho3(*n),
            StandardFamily::RhoI { n, set } => rho_i(*n, set),
            StandardFamily::RhoTildeI { n, set } => rho_tilde_i(*n, set),
        }
    }
}

/// Named seeds: `rho3_<n>` for the 3-fold family, `rho<digits>_<n>` for
/// `ρ_I` with single-digit indices (`rho23_6`), `rhot<digits>_<n>` for the
/// tilde family, and `rhoe_<n>` / `rhote_<n>` for an empty index set.
/// Longer sets use `rho[2,3,11]_<n>`. `rho3_<n>` always means the 3-fold
/// coloring; write `rho[3]_<n>` for `ρ_{3}`.
impl FromStr for StandardFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown coloring {s:?}"));
        let (head, n) = s.trim().rsplit_once('_').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        let body = head.strip_prefix("rho").ok_or_else(bad)?;
        if body == "3" {
            return Ok(StandardFamily::Rho3 { n });
        }
        let (tilde, body) = match body.strip_prefix('t') {
            Some(rest) => (true, rest),
            None => (false, body),
        };
        let set: BTreeSet<usize> = if body == "e" {
            BTreeSet::new()
        } else if let Some(list) = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            list.split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else if !body.is_empty() && body.chars().all(|c| c.is_ascii_digit()) {
            body.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
        } else {
            return Err(bad());
        };
        Ok(if tilde {
            StandardFamily::RhoTildeI { n, set }
        } else {
            StandardFamily::RhoI { n, set }
        })
    }
}

pub fn rho3(n: usize) -> Result<Coloring> {
    if n < 3 {
        return Err(Error::InvalidColoring(format!("rho3 needs n >= 3, got {n}")));
    }
    let r = Transposition::t(1, 2);
    let b = Transposition::t(2, 3);
    let mut colors = vec![r, r];
    colors.resize(n, b);
    Coloring::new(3, colors)
}

fn rho_family(n: usize, set: &BTreeSet<usize>, on: Transposition, off: Transposition) -> Result<Coloring> {
    if n < 3 {
        return Err(Error::InvalidColoring(format!("rho_I needs n >= 3, got {n}")));
    }
    if let Some(bad) = set.iter().find(|&&i| i < 2 || i >= n) {
        return Err(Error::MalformedIndexSet(format!(
            "index {bad} outside 2..={}",
            n - 1
        )));
    }
    let r = Transposition::t(1, 2);
    let colors = (0..n)
        .map(|i| match i {
            0 | 1 => r,
            i if set.contains(&i) => on,
            _ => off,
        })
        .collect();
    Coloring::new(4, colors)
}

pub fn rho_i(n: usize, set: &BTreeSet<usize>) -> Result<Coloring> {
    rho_family(n, set, Transposition::t(1, 4), Transposition::t(2, 3))
}

pub fn rho_tilde_i(n: usize, set: &BTreeSet<usize>) -> Result<Coloring> {
    rho_family(n, set, Transposition::t(2, 3), Transposition::t(1, 4))
}

/// Convenience for literal index lists.
pub fn rho(n: usize, set: &[usize]) -> Result<Coloring> {
    rho_i(n, &set.iter().copied().collect())
}

pub fn rho_tilde(n: usize, set: &[usize]) -> Result<Coloring> {
    rho_tilde_i(n, &set.iter().copied().collect())
}

/// Every connected `ρ_I^n`. Since `ρ̃_I = ρ_{I^c}` this is all of `C^n`.
pub fn standard_class(n: usize) -> Vec<Coloring> {
    let slots = n.saturating_sub(2);
    let mut out: Vec<Coloring> = (0u64..(1u64 << slots))
        .map(|mask| {
            let set: BTreeSet<usize> = (0..slots)
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| k + 2)
                .collect();
            rho_i(n, &set).expect("valid index set")
        })
        .filter(|c| c.is_connected())
        .collect();
    out.sort();
    out
}

/// `C^n_σ`: the members of `C^n` with boundary monodromy `σ`.
pub fn standard_class_with(n: usize, sigma: &Permutation) -> Vec<Coloring> {
    standard_class(n)
        .into_iter()
        .filter(|c| &c.boundary_monodromy() == sigma)
        .collect()
}

/// The index set `I` of a coloring of the form `ρ_I^n`, if it is one.
pub fn as_rho_i(c: &Coloring) -> Option<BTreeSet<usize>> {
    let r = Transposition::t(1, 2);
    let on = Transposition::t(1, 4);
    let off = Transposition::t(2, 3);
    if c.degree() != 4 || c.len() < 3 || c.colors()[0] != r || c.colors()[1] != r {
        return None;
    }
    let mut set = BTreeSet::new();
    for (i, t) in c.colors().iter().enumerate().skip(2) {
        if *t == on {
            set.insert(i);
        } else if *t != off {
            return None;
        }
    }
    Some(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: usize, b: usize) -> Transposition {
        Transposition::t(a, b)
    }

    #[test]
    fn standard_constructors() {
        let c = rho(6, &[2, 3]).unwrap();
        assert_eq!(c.degree(), 4);
        assert_eq!(c.colors(), &[t(1, 2), t(1, 2), t(1, 4), t(1, 4), t(2, 3), t(2, 3)]);
        assert_eq!(rho3(6).unwrap().colors(), &[t(1, 2), t(1, 2), t(2, 3), t(2, 3), t(2, 3), t(2, 3)]);
        assert_eq!(
            rho_tilde(6, &[4]).unwrap().colors(),
            &[t(1, 2), t(1, 2), t(1, 4), t(1, 4), t(2, 3), t(1, 4)]
        );
        assert!(matches!(rho(6, &[1]), Err(Error::MalformedIndexSet(_))));
        assert!(matches!(rho(6, &[6]), Err(Error::MalformedIndexSet(_))));
    }

    #[test]
    fn boundary_monodromy_by_parity() {
        assert!(rho(6, &[2, 3]).unwrap().boundary_monodromy().is_identity());
        assert_eq!(rho(6, &[2]).unwrap().boundary_monodromy().to_string(), "(1 4)(2 3)");
        assert_eq!(rho(7, &[2, 3]).unwrap().boundary_monodromy().to_string(), "(2 3)");
        assert_eq!(rho(7, &[2]).unwrap().boundary_monodromy().to_string(), "(1 4)");
    }

    #[test]
    fn connectivity() {
        assert!(rho(6, &[2, 3]).unwrap().is_connected());
        assert!(!Coloring::new(4, vec![t(2, 3); 4]).unwrap().is_connected());
        assert!(!rho(6, &[2, 3, 4, 5]).unwrap().is_connected());
    }

    #[test]
    fn dimming() {
        assert_eq!(rho(6, &[2, 3]).unwrap().dim_lights().unwrap(), rho3(6).unwrap());
        assert_eq!(rho_tilde(6, &[2, 3, 4, 5]).unwrap().dim_lights().unwrap(), rho3(6).unwrap());
        let c = Coloring::new(4, vec![t(3, 4), t(1, 3), t(3, 4)]).unwrap();
        assert_eq!(c.dim_lights().unwrap().colors(), &[t(1, 2), t(1, 3), t(1, 2)]);
        assert_eq!(rho3(6).unwrap().dim_lights(), Err(Error::NotS4(3)));
    }

    #[test]
    fn stabilization() {
        let c = rho(6, &[2, 3]).unwrap();
        let s = c.stabilize(4).unwrap();
        assert_eq!(s.degree(), 5);
        assert_eq!(&s.colors()[4..], &[t(2, 3), t(2, 3), t(4, 5), t(4, 5)]);
        assert_eq!(
            s.boundary_monodromy(),
            c.boundary_monodromy().extend(5).unwrap()
        );
        assert!(s.is_connected());
        assert!(c.stabilize(5).is_err());
    }

    #[test]
    fn class_sizes() {
        let id6 = Permutation::identity(4);
        assert_eq!(standard_class_with(6, &id6).len(), 6);
        let v = t(1, 4).to_permutation(4).unwrap().then(&t(2, 3).to_permutation(4).unwrap());
        assert_eq!(standard_class_with(6, &v).len(), 8);
        assert_eq!(standard_class_with(8, &id6).len(), 30);
        assert_eq!(standard_class_with(7, &t(2, 3).to_permutation(4).unwrap()).len(), 15);
    }

    #[test]
    fn text_round_trip() {
        let c = rho(6, &[2, 3]).unwrap();
        assert_eq!(c.to_string(), "d=4: (12)(12)(14)(14)(23)(23)");
        assert_eq!(c.to_string().parse::<Coloring>().unwrap(), c);
        assert_eq!("rho23_6".parse::<Coloring>().unwrap(), c);
        assert_eq!("rhot4_6".parse::<Coloring>().unwrap(), rho_tilde(6, &[4]).unwrap());
        assert_eq!("rho3_6".parse::<Coloring>().unwrap(), rho3(6).unwrap());
        assert_eq!("rho[3]_6".parse::<Coloring>().unwrap(), rho(6, &[3]).unwrap());
        assert_eq!("rhoe_6".parse::<Coloring>().unwrap(), rho(6, &[]).unwrap());
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"degree":4,"colors":[[1,2],[1,2],[1,4],[1,4],[2,3],[2,3]]}"#);
        assert_eq!(json.parse::<Coloring>().unwrap(), c);
        assert!(r#"{"degree":3,"colors":[[1,4]]}"#.parse::<Coloring>().is_err());
    }

    #[test]
    fn recognizes_rho_i() {
        let set: BTreeSet<usize> = [2, 5].into_iter().collect();
        assert_eq!(as_rho_i(&rho_i(7, &set).unwrap()), Some(set));
        assert_eq!(as_rho_i(&rho3(6).unwrap()), None);
    }
}
