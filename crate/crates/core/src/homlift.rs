//! First homology of the closed covering surface and the action of liftable
//! braids on it.
//!
//! The branched cover of the disk retracts onto a graph with one vertex per
//! sheet and one edge `(i, j)` per lift of the loop `α_i` starting on sheet
//! `j`. Filling the branch points and capping the boundary circles gives the
//! closed surface, whose `H₁` is the cycle space of that graph modulo the
//! attaching curves of the added disks.

use serde::{Deserialize, Serialize};

use crate::action;
use crate::braid::{artin_images, BraidWord, FreeWord, Letter};
use crate::covering::Coloring;
use crate::error::{Error, Result};
use crate::lattice::{quotient, Int, IntMatrix, Matrix, Quotient};
use crate::perm::Transposition;

/// Integer chain on the edges, indexed by `i · d + (j − 1)`.
pub type Chain = Vec<Int>;

fn edge(d: usize, i: usize, j: usize) -> usize {
    i * d + (j - 1)
}

/// The cellular model of the closed surface of a connected coloring.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    coloring: Coloring,
    /// Edges of the BFS spanning tree rooted at sheet 1.
    tree: Vec<bool>,
    /// Non-tree edges in canonical order; they index cycle coordinates.
    cotree: Vec<usize>,
    /// Tree chain from sheet 1 to each sheet.
    tree_paths: Vec<Chain>,
    relations: Vec<Chain>,
    quotient: Quotient<Int>,
}

impl SurfaceModel {
    pub fn build(c: &Coloring) -> Result<SurfaceModel> {
        if !c.is_connected() {
            return Err(Error::Disconnected);
        }
        let (n, d) = (c.len(), c.degree());
        let ne = n * d;
        let mut tree = vec![false; ne];
        let mut tree_paths: Vec<Option<Chain>> = vec![None; d + 1];
        tree_paths[1] = Some(vec![0; ne]);
        let mut queue = std::collections::VecDeque::from([1usize]);
        while let Some(u) = queue.pop_front() {
            // Edges touching u in canonical order, traversed either way.
            for i in 0..n {
                for j in 1..=d {
                    let t = c.colors()[i];
                    let v = t.apply(j);
                    if v == j {
                        continue;
                    }
                    let (other, sign) = if j == u {
                        (v, 1)
                    } else if v == u {
                        (j, -1)
                    } else {
                        continue;
                    };
                    if tree_paths[other].is_none() {
                        let mut p = tree_paths[u].clone().expect("visited");
                        p[edge(d, i, j)] += sign;
                        tree[edge(d, i, j)] = true;
                        tree_paths[other] = Some(p);
                        queue.push_back(other);
                    }
                }
            }
        }
        let tree_paths: Vec<Chain> = tree_paths.into_iter().map(|p| p.unwrap_or_default()).collect();
        let cotree: Vec<usize> = (0..ne).filter(|&e| !tree[e]).collect();

        let mut relations = Vec::new();
        for (i, t) in c.colors().iter().enumerate() {
            for j in 1..=d {
                let mut r = vec![0; ne];
                if t.apply(j) == j {
                    r[edge(d, i, j)] = 1;
                } else if j == t.a() {
                    r[edge(d, i, t.a())] = 1;
                    r[edge(d, i, t.b())] = 1;
                } else {
                    continue;
                }
                relations.push(r);
            }
        }
        let boundary = FreeWord::boundary(n);
        for cycle in c.boundary_monodromy().cycles() {
            let mut total = vec![0; ne];
            let mut sheet = cycle[0];
            for _ in 0..cycle.len() {
                let (ch, end) = lift_chain(c, &boundary, sheet);
                for (a, b) in total.iter_mut().zip(ch) {
                    *a += b;
                }
                sheet = end;
            }
            debug_assert_eq!(sheet, cycle[0]);
            relations.push(total);
        }

        let coords = |ch: &Chain| -> Vec<Int> { cotree.iter().map(|&e| ch[e]).collect() };
        let rel_coords: Vec<Vec<Int>> = relations.iter().map(coords).collect();
        let quotient = quotient(cotree.len(), &rel_coords)
            .map_err(|t| Error::Torsion(format!("{:?} for {c}", t.0)))?;
        if quotient.rank() % 2 != 0 {
            return Err(Error::Torsion(format!("odd rank {} for {c}", quotient.rank())));
        }
        Ok(SurfaceModel {
            coloring: c.clone(),
            tree,
            cotree,
            tree_paths,
            relations,
            quotient,
        })
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    /// Rank of `H₁(graph) = n·d − d + 1`.
    pub fn cycle_rank(&self) -> usize {
        self.cotree.len()
    }

    /// Rank of `H₁` of the closed surface.
    pub fn rank(&self) -> usize {
        self.quotient.rank()
    }

    pub fn genus(&self) -> usize {
        self.rank() / 2
    }

    pub fn relations(&self) -> &[Chain] {
        &self.relations
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.tree[e]
    }

    fn degree(&self) -> usize {
        self.coloring.degree()
    }

    /// The fundamental cycle of a non-tree edge as a chain.
    fn fundamental_cycle(&self, e: usize) -> Chain {
        let d = self.degree();
        let (i, j) = (e / d, e % d + 1);
        let v = self.coloring.colors()[i].apply(j);
        let mut ch: Chain = self.tree_paths[j].clone();
        ch[e] += 1;
        for (a, b) in ch.iter_mut().zip(&self.tree_paths[v]) {
            *a -= b;
        }
        ch
    }

    /// Chains representing the basis of `H₁`.
    pub fn basis_chains(&self) -> Vec<Chain> {
        let ne = self.coloring.len() * self.degree();
        (0..self.rank())
            .map(|k| {
                let mut ch = vec![0; ne];
                for (c, &e) in self.quotient.lifts.row(k).iter().zip(&self.cotree) {
                    if *c != 0 {
                        for (a, b) in ch.iter_mut().zip(self.fundamental_cycle(e)) {
                            *a += c * b;
                        }
                    }
                }
                ch
            })
            .collect()
    }

    /// Class of a cycle in `H₁` of the closed surface.
    pub fn project(&self, cycle: &Chain) -> Vec<Int> {
        debug_assert!(self.is_cycle(cycle));
        let coords: Vec<Int> = self.cotree.iter().map(|&e| cycle[e]).collect();
        self.quotient.project(&coords)
    }

    pub fn is_cycle(&self, ch: &Chain) -> bool {
        let d = self.degree();
        let mut bd = vec![0; d + 1];
        for (e, &x) in ch.iter().enumerate() {
            let (i, j) = (e / d, e % d + 1);
            let v = self.coloring.colors()[i].apply(j);
            bd[v] += x;
            bd[j] -= x;
        }
        bd.iter().all(|&x| x == 0)
    }

    /// Matrix of a liftable braid on the basis of `H₁`.
    pub fn action(&self, w: &BraidWord) -> Result<HomologyAction> {
        let traj = action::trajectory(w, &self.coloring)?;
        if traj.last() != Some(&self.coloring) {
            return Err(Error::NotLiftable);
        }
        let columns: Vec<Vec<Int>> = self
            .basis_chains()
            .into_iter()
            .map(|b| self.project(&pull_back(w, &traj, b)))
            .collect();
        Ok(HomologyAction {
            matrix: Matrix::from_columns(self.rank(), &columns),
        })
    }

    /// Same matrix, computed from the Artin images instead of letter by
    /// letter. Slower; used to cross-check.
    pub fn action_via_artin(&self, w: &BraidWord) -> Result<HomologyAction> {
        if !action::is_liftable(w, &self.coloring)? {
            return Err(Error::NotLiftable);
        }
        let images = artin_images(w);
        let d = self.degree();
        let columns: Vec<Vec<Int>> = self
            .basis_chains()
            .into_iter()
            .map(|b| {
                let mut out = vec![0; b.len()];
                for (e, &x) in b.iter().enumerate() {
                    if x != 0 {
                        let (ch, _) = lift_chain(&self.coloring, &images[e / d], e % d + 1);
                        for (a, c) in out.iter_mut().zip(ch) {
                            *a += x * c;
                        }
                    }
                }
                self.project(&out)
            })
            .collect();
        Ok(HomologyAction {
            matrix: Matrix::from_columns(self.rank(), &columns),
        })
    }

    /// JSON-friendly description of the basis.
    pub fn basis_description(&self) -> Vec<String> {
        self.basis_chains().iter().map(|c| chain_text(c, self.degree())).collect()
    }
}

/// Pull a chain on the bottom surface of `w` back to the top one, one
/// letter at a time from the bottom. `traj` is the trajectory of the top
/// coloring along `w`.
fn pull_back(w: &BraidWord, traj: &[Coloring], mut v: Chain) -> Chain {
    for (t, &l) in w.letters().iter().enumerate().rev() {
        v = letter_chain_map(traj[t].colors(), l, &v);
    }
    v
}

/// The chain map of one crossing: an edge `(k, j)` below the crossing goes to
/// the lift of `φ_l(α_k)` from sheet `j` above it. `colors` is the coloring
/// above the crossing.
pub fn letter_chain_map(colors: &[Transposition], l: Letter, v: &[Int]) -> Chain {
    let d = v.len() / colors.len();
    let i = l.i();
    let (si, sj) = (colors[i], colors[i + 1]);
    let mut out = v.to_vec();
    for j in 1..=d {
        out[edge(d, i, j)] = 0;
        out[edge(d, i + 1, j)] = 0;
    }
    for j in 1..=d {
        let x = v[edge(d, i, j)];
        let y = v[edge(d, i + 1, j)];
        if l.exp > 0 {
            if x != 0 {
                // α_i ↦ α_i α_{i+1} α_i⁻¹
                let a = si.apply(j);
                let b = sj.apply(a);
                out[edge(d, i, j)] += x;
                out[edge(d, i + 1, a)] += x;
                out[edge(d, i, si.apply(b))] -= x;
            }
            if y != 0 {
                // α_{i+1} ↦ α_i
                out[edge(d, i, j)] += y;
            }
        } else {
            if x != 0 {
                // α_i ↦ α_{i+1}
                out[edge(d, i + 1, j)] += x;
            }
            if y != 0 {
                // α_{i+1} ↦ α_{i+1}⁻¹ α_i α_{i+1}
                let a = sj.apply(j);
                let b = si.apply(a);
                out[edge(d, i + 1, a)] -= y;
                out[edge(d, i, a)] += y;
                out[edge(d, i + 1, b)] += y;
            }
        }
    }
    out
}

/// Lift a loop to a chain, starting on sheet `start`; returns the chain and
/// the sheet where the lift ends.
pub fn lift_chain(c: &Coloring, f: &FreeWord, start: usize) -> (Chain, usize) {
    let d = c.degree();
    let mut ch = vec![0; c.len() * d];
    let mut sheet = start;
    for &x in &f.0 {
        let i = x.unsigned_abs() as usize - 1;
        let t = c.colors()[i];
        let next = t.apply(sheet);
        if x > 0 {
            ch[edge(d, i, sheet)] += 1;
        } else {
            ch[edge(d, i, next)] -= 1;
        }
        sheet = next;
    }
    (ch, sheet)
}

fn chain_text(ch: &Chain, d: usize) -> String {
    let parts: Vec<String> = ch
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(e, &x)| {
            let (i, j) = (e / d, e % d + 1);
            match x {
                1 => format!("+({i},{j})"),
                -1 => format!("-({i},{j})"),
                x if x > 0 => format!("+{x}({i},{j})"),
                x => format!("{x}({i},{j})"),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

/// Integer matrix of a liftable braid on `H₁`, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyAction {
    pub matrix: IntMatrix,
}

impl HomologyAction {
    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn det(&self) -> Int {
        self.matrix.det()
    }

    /// `self` after `other` as maps; the action of the word `self · other`.
    pub fn compose(&self, other: &HomologyAction) -> HomologyAction {
        HomologyAction {
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    /// Rank of `A − I`.
    pub fn deviation_rank(&self) -> usize {
        let n = self.matrix.rows();
        self.matrix.sub(&Matrix::identity(n)).rank()
    }

    /// Whether `(A − I)^k = 0` for `k` the size of `A`.
    pub fn is_unipotent(&self) -> bool {
        let n = self.matrix.rows();
        let nil = self.matrix.sub(&Matrix::identity(n));
        let mut p = Matrix::identity(n);
        for _ in 0..n.max(1) {
            p = p.mul(&nil);
        }
        p.is_zero()
    }

    pub fn rows(&self) -> Vec<Vec<Int>> {
        self.matrix.to_rows()
    }
}

pub fn build_surface(c: &Coloring) -> Result<SurfaceModel> {
    SurfaceModel::build(c)
}

pub fn homology_action(w: &BraidWord, c: &Coloring) -> Result<HomologyAction> {
    SurfaceModel::build(c)?.action(w)
}

pub fn is_homology_trivial(w: &BraidWord, c: &Coloring) -> Result<bool> {
    Ok(homology_action(w, c)?.is_identity())
}

/// Homology of the filled cover relative to the fiber over the basepoint,
/// before the boundary circles are capped: all edge chains modulo the
/// branch-point fillings. It has rank `n` for simple colorings.
///
/// Isotopies supported in a disk whose preimage is a union of disks, such as
/// the moves `M` and `P`, act trivially here, and so does any braid that is
/// equivalent to the identity through them. A liftable braid with a
/// nontrivial relative action therefore has no certificate made of those
/// moves.
#[derive(Clone, Debug)]
pub struct RelativeModel {
    coloring: Coloring,
    quotient: Quotient<Int>,
}

impl RelativeModel {
    pub fn build(c: &Coloring) -> Result<RelativeModel> {
        let (n, d) = (c.len(), c.degree());
        let mut rels = Vec::new();
        for (i, t) in c.colors().iter().enumerate() {
            for j in 1..=d {
                let mut r = vec![0; n * d];
                if t.apply(j) == j {
                    r[edge(d, i, j)] = 1;
                } else if j == t.a() {
                    r[edge(d, i, t.a())] = 1;
                    r[edge(d, i, t.b())] = 1;
                } else {
                    continue;
                }
                rels.push(r);
            }
        }
        let quotient = quotient(n * d, &rels).map_err(|t| Error::Torsion(format!("{:?}", t.0)))?;
        Ok(RelativeModel {
            coloring: c.clone(),
            quotient,
        })
    }

    pub fn rank(&self) -> usize {
        self.quotient.rank()
    }

    pub fn action(&self, w: &BraidWord) -> Result<HomologyAction> {
        let traj = action::trajectory(w, &self.coloring)?;
        if traj.last() != Some(&self.coloring) {
            return Err(Error::NotLiftable);
        }
        let columns: Vec<Vec<Int>> = (0..self.rank())
            .map(|k| {
                let v = pull_back(w, &traj, self.quotient.lifts.row(k).to_vec());
                self.quotient.project(&v)
            })
            .collect();
        Ok(HomologyAction {
            matrix: Matrix::from_columns(self.rank(), &columns),
        })
    }
}

/// Whether the relative action of `w` over `c` is trivial; see
/// [`RelativeModel`].
pub fn relative_action_trivial(w: &BraidWord, c: &Coloring) -> Result<bool> {
    Ok(RelativeModel::build(c)?.action(w)?.is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{self, parse_word};
    use crate::covering::rho;

    fn w(s: &str, n: usize) -> BraidWord {
        parse_word(s, n).unwrap()
    }

    #[test]
    fn ranks() {
        for (n, r) in [(6, 0), (8, 2), (10, 4), (12, 6)] {
            let m = build_surface(&rho(n, &[2, 3]).unwrap()).unwrap();
            assert_eq!(m.rank(), r, "n={n}");
            assert_eq!(m.cycle_rank(), n * 4 - 4 + 1);
        }
        assert_eq!(build_surface(&rho(6, &[2, 3, 4, 5]).unwrap()).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn lifting_loops() {
        let c = rho(6, &[2, 3]).unwrap();
        let (ch, end) = lift_chain(&c, &FreeWord::from_letters(&[1, 1]), 1);
        assert_eq!(end, 1);
        assert_eq!(ch[0] + ch[1], 2);
        let (ch, end) = lift_chain(&c, &FreeWord::from_letters(&[1]), 3);
        assert_eq!((ch[2], end), (1, 3));
        let (ch, _) = lift_chain(&c, &FreeWord(vec![3, -3]), 2);
        assert!(ch.iter().all(|&x| x == 0));
    }

    #[test]
    fn generator_actions_at_genus_one() {
        let c = rho(8, &[2, 3]).unwrap();
        let m = build_surface(&c).unwrap();
        assert!(m.action(&w("b0", 8)).unwrap().is_identity());
        assert!(m.action(&w("b2", 8)).unwrap().is_identity());
        let b4 = m.action(&w("b4", 8)).unwrap();
        assert!(!b4.is_identity());
        assert_eq!(m.action(&braid::delta4(8).unwrap()).unwrap(), b4);
        assert_eq!(b4.det(), 1);
        assert!(matches!(m.action(&w("b1", 8)), Err(Error::NotLiftable)));
    }

    #[test]
    fn letterwise_matches_artin() {
        let c = rho(8, &[2, 3]).unwrap();
        let m = build_surface(&c).unwrap();
        for s in ["b4", "b5 b6", "d4", "b1^3 b4 b0", "b6^-1 b5^-1 b4", "d4 b5 b6^-1", "b5 b4 b5"] {
            let x = w(s, 8);
            if action::is_liftable(&x, &c).unwrap() {
                assert_eq!(m.action(&x).unwrap(), m.action_via_artin(&x).unwrap(), "{s}");
            }
        }
    }

    #[test]
    fn basis_metadata() {
        let m = build_surface(&rho(8, &[2, 3]).unwrap()).unwrap();
        let desc = m.basis_description();
        assert_eq!(desc.len(), 2);
        for ch in m.basis_chains() {
            assert!(m.is_cycle(&ch));
        }
        for r in m.relations() {
            assert!(m.is_cycle(r));
            assert!(m.project(r).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn relative_rank() {
        let c = rho(6, &[2, 3]).unwrap();
        let r = RelativeModel::build(&c).unwrap();
        assert_eq!(r.rank(), 6);
        assert!(r.action(&w("b3^2", 6)).unwrap().is_identity());
        assert!(r.action(&w("b1^-3", 6)).unwrap().is_identity());
        assert!(!r.action(&w("b4", 6)).unwrap().is_identity());
    }
}
