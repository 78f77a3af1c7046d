//! Braid words, the named braids, and the word problem through the Artin
//! action on the free group.
//!
//! Letters are read left to right. A word `w` acts on colorings on the right,
//! so `w1·w2` means "first `w1`, then `w2`". The automorphism attached to a
//! word satisfies `φ(w1·w2) = φ(w1) ∘ φ(w2)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `β_index^exp` with `exp = ±1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(from = "(u8, i8)", into = "(u8, i8)")]
pub struct Letter {
    pub index: u8,
    pub exp: i8,
}

impl Letter {
    pub fn new(index: usize, exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        Letter {
            index: index as u8,
            exp,
        }
    }

    pub fn i(&self) -> usize {
        self.index as usize
    }

    pub fn inverse(self) -> Letter {
        Letter {
            index: self.index,
            exp: -self.exp,
        }
    }
}

impl From<(u8, i8)> for Letter {
    fn from((index, exp): (u8, i8)) -> Letter {
        Letter { index, exp }
    }
}

impl From<Letter> for (u8, i8) {
    fn from(l: Letter) -> (u8, i8) {
        (l.index, l.exp)
    }
}

/// A word in `β_0 … β_{n-2}` and their inverses.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::Unsupported(format!("{strands} strands")));
        }
        if let Some(l) = letters.iter().find(|l| l.i() + 1 >= strands || l.exp.abs() != 1) {
            return Err(Error::IndexOutOfRange {
                index: l.i(),
                strands,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    /// `β_i^e`; `e` may be any integer.
    pub fn gen(strands: usize, i: usize, e: i32) -> Result<Self> {
        let l = Letter::new(i, e.signum() as i8);
        BraidWord::new(strands, vec![l; e.unsigned_abs() as usize])
    }

    /// Product of generators given as `(i, e)` pairs.
    pub fn from_pairs(strands: usize, pairs: &[(usize, i32)]) -> Result<Self> {
        let mut out = BraidWord::identity(strands);
        for &(i, e) in pairs {
            out = out.mul(&BraidWord::gen(strands, i, e)?)?;
        }
        Ok(out)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    fn check_same(&self, other: &BraidWord) -> Result<()> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch {
                word: other.strands,
                points: self.strands,
            });
        }
        Ok(())
    }

    /// Concatenation `self · other`.
    pub fn mul(&self, other: &BraidWord) -> Result<BraidWord> {
        self.check_same(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// `[self]y = y⁻¹ · self · y`.
    pub fn conj_by(&self, y: &BraidWord) -> Result<BraidWord> {
        y.inverse().mul(self)?.mul(y)
    }

    /// Cancel adjacent inverse pairs.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    /// The same word on more strands.
    pub fn widen(&self, strands: usize) -> Result<BraidWord> {
        BraidWord::new(strands, self.letters.clone())
    }

    /// Parse the text grammar described in [`parse_word`].
    pub fn parse(text: &str, strands: usize) -> Result<BraidWord> {
        parse_word(text, strands)
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Space separated `b<i>` / `b<i>^-1` tokens, runs collapsed to `b<i>^k`;
/// the empty word prints as `e`.
impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let mut first = true;
        let mut k = 0;
        while k < self.letters.len() {
            let l = self.letters[k];
            let mut run = 1;
            while k + run < self.letters.len() && self.letters[k + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let e = run as i64 * l.exp as i64;
            if e == 1 {
                write!(f, "b{}", l.index)?;
            } else {
                write!(f, "b{}^{}", l.index, e)?;
            }
            k += run;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Free group and the Artin action.

/// Freely reduced word in `α_0 … α_{n-1}`; letter `±(k+1)` is `α_k^{±1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct FreeWord(pub Vec<i32>);

impl FreeWord {
    pub fn generator(k: usize) -> FreeWord {
        FreeWord(vec![k as i32 + 1])
    }

    /// `α_0 α_1 ⋯ α_{n-1}`, the boundary loop.
    pub fn boundary(rank: usize) -> FreeWord {
        FreeWord((1..=rank as i32).collect())
    }

    pub fn from_letters(letters: &[i32]) -> FreeWord {
        let mut w = FreeWord::default();
        for &x in letters {
            w.push(x);
        }
        w
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, x: i32) {
        if self.0.last() == Some(&-x) {
            self.0.pop();
        } else {
            self.0.push(x);
        }
    }

    fn extend(&mut self, other: &FreeWord) {
        for &x in &other.0 {
            self.push(x);
        }
    }

    fn extend_inverse(&mut self, other: &FreeWord) {
        for &x in other.0.iter().rev() {
            self.push(-x);
        }
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        out.extend(other);
        out
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|x| -x).collect())
    }

    /// Replace each `α_k` by `images[k]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out = FreeWord::default();
        for &x in &self.0 {
            let img = &images[x.unsigned_abs() as usize - 1];
            if x > 0 {
                out.extend(img);
            } else {
                out.extend_inverse(img);
            }
        }
        out
    }

    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&x| {
                if x > 0 {
                    format!("a{}", x - 1)
                } else {
                    format!("a{}^-1", -x - 1)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `φ_w(α_k)` for every `k`.
///
/// `β_i` sends `α_i ↦ α_i α_{i+1} α_i⁻¹`, `α_{i+1} ↦ α_i`; appending a letter
/// `l` to `w` replaces the images by `φ_w(φ_l(α_k))`.
pub fn artin_images(w: &BraidWord) -> Vec<FreeWord> {
    let mut images: Vec<FreeWord> = (0..w.strands()).map(FreeWord::generator).collect();
    for l in w.letters() {
        let i = l.i();
        let (a, b) = (images[i].clone(), images[i + 1].clone());
        if l.exp > 0 {
            let mut new_a = a.clone();
            new_a.extend(&b);
            new_a.extend_inverse(&a);
            images[i] = new_a;
            images[i + 1] = a;
        } else {
            let mut new_b = b.inverse();
            new_b.extend(&a);
            new_b.extend(&b);
            images[i] = b;
            images[i + 1] = new_b;
        }
    }
    images
}

/// `φ_w(f)`.
pub fn artin_apply(w: &BraidWord, f: &FreeWord) -> Result<FreeWord> {
    if f.max_generator() > w.strands() {
        return Err(Error::StrandMismatch {
            word: w.strands(),
            points: f.max_generator(),
        });
    }
    Ok(f.substitute(&artin_images(w)))
}

/// Whether two words represent the same braid.
pub fn words_equal(w1: &BraidWord, w2: &BraidWord) -> Result<bool> {
    w1.check_same(w2)?;
    Ok(artin_images(w1) == artin_images(w2))
}

/// Whether `w` is the trivial braid.
pub fn is_trivial(w: &BraidWord) -> bool {
    artin_images(w)
        .iter()
        .enumerate()
        .all(|(k, img)| img.0 == [k as i32 + 1])
}

// ---------------------------------------------------------------------------
// Named braids.

fn need(strands: usize, max_index: usize, what: &str) -> Result<()> {
    if max_index + 2 > strands {
        return Err(Error::Unsupported(format!(
            "{what} uses b{max_index}, needs at least {} strands, got {strands}",
            max_index + 2
        )));
    }
    Ok(())
}

fn descending(strands: usize, from: usize, to: usize) -> BraidWord {
    let letters = if from >= to {
        (to..=from).rev().map(|i| Letter::new(i, 1)).collect()
    } else {
        Vec::new()
    };
    BraidWord { strands, letters }
}

fn ascending(strands: usize, from: usize, to: usize, exp: i8) -> BraidWord {
    let letters = if from <= to {
        (from..=to).map(|i| Letter::new(i, exp)).collect()
    } else {
        Vec::new()
    };
    BraidWord { strands, letters }
}

/// `δ₄ = [β₄] β₃β₂β₁²β₂β₃²β₂β₁`, rotation about the interval `d₄`.
pub fn delta4(strands: usize) -> Result<BraidWord> {
    need(strands, 4, "d4")?;
    let y = BraidWord::from_pairs(strands, &[(3, 1), (2, 1), (1, 2), (2, 1), (3, 2), (2, 1), (1, 1)])?;
    BraidWord::gen(strands, 4, 1)?.conj_by(&y)
}

/// `δ₆ = [δ₄] β₅⁻¹β₄⁻¹β₃⁻¹β₂⁻¹β₆⁻¹β₅⁻¹β₄⁻¹β₃⁻¹`.
pub fn delta6(strands: usize) -> Result<BraidWord> {
    need(strands, 6, "d6")?;
    let y = BraidWord::from_pairs(
        strands,
        &[(5, -1), (4, -1), (3, -1), (2, -1), (6, -1), (5, -1), (4, -1), (3, -1)],
    )?;
    delta4(strands)?.conj_by(&y)
}

/// The general rotation
/// `δ_k = [β_k] β_{k-1}⋯β₂β₁² β₂⁻¹⋯β_{k-4}⁻¹ β_{k-3}β_{k-2}² β_{k-3}⋯β₁`
/// for even `k ≥ 4`, expanded literally.
pub fn delta_k(k: usize, strands: usize) -> Result<BraidWord> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::Unsupported(format!("dN({k}) needs an even k >= 4")));
    }
    need(strands, k, &format!("dN({k})"))?;
    let y = descending(strands, k - 1, 2)
        .mul(&BraidWord::gen(strands, 1, 2)?)?
        .mul(&ascending(strands, 2, k - 4, -1))?
        .mul(&BraidWord::gen(strands, k - 3, 1)?)?
        .mul(&BraidWord::gen(strands, k - 2, 2)?)?
        .mul(&descending(strands, k - 3, 1))?;
    BraidWord::gen(strands, k, 1)?.conj_by(&y)
}

/// `χ = β_{2g+3}⋯β₅β₄²β₅⋯β_{2g+3}`.
pub fn chi(g: usize, strands: usize) -> Result<BraidWord> {
    if g < 1 {
        return Err(Error::Unsupported("chi(g) needs g >= 1".into()));
    }
    need(strands, 2 * g + 3, &format!("chi({g})"))?;
    descending(strands, 2 * g + 3, 5)
        .mul(&BraidWord::gen(strands, 4, 2)?)?
        .mul(&ascending(strands, 5, 2 * g + 3, 1))
}

/// A braid assembled from display-level pieces, so that individual
/// occurrences of `β₄^{±1}` can be swapped for `δ₄^{±1}`.
#[derive(Clone, Debug)]
pub struct Display4 {
    strands: usize,
    pieces: Vec<Piece>,
}

#[derive(Clone, Debug)]
enum Piece {
    Letter(Letter),
    Block(BraidWord),
}

impl Display4 {
    fn from_word(w: &BraidWord) -> Display4 {
        Display4 {
            strands: w.strands(),
            pieces: w.letters().iter().map(|&l| Piece::Letter(l)).collect(),
        }
    }

    fn then_word(mut self, w: &BraidWord) -> Display4 {
        self.pieces.extend(w.letters().iter().map(|&l| Piece::Letter(l)));
        self
    }

    fn then_block(mut self, w: BraidWord) -> Display4 {
        self.pieces.push(Piece::Block(w));
        self
    }

    /// Number of `β₄^{±1}` letters outside the `δ₆` blocks. Both copies of a
    /// conjugating word count separately, so the variants include every
    /// consistent substitution as well.
    pub fn beta4_occurrences(&self) -> usize {
        self.pieces
            .iter()
            .filter(|p| matches!(p, Piece::Letter(l) if l.index == 4))
            .count()
    }

    /// Expand, replacing the `k`-th occurrence of `β₄^{±1}` by `δ₄^{±1}`
    /// whenever bit `k` of `mask` is set.
    pub fn expand(&self, mask: u64) -> Result<BraidWord> {
        let d4 = delta4(self.strands)?;
        let d4inv = d4.inverse();
        let mut letters = Vec::new();
        let mut k = 0;
        for p in &self.pieces {
            match p {
                Piece::Letter(l) if l.index == 4 => {
                    if mask >> k & 1 == 1 {
                        letters.extend_from_slice(if l.exp > 0 { d4.letters() } else { d4inv.letters() });
                    } else {
                        letters.push(*l);
                    }
                    k += 1;
                }
                Piece::Letter(l) => letters.push(*l),
                Piece::Block(w) => letters.extend_from_slice(w.letters()),
            }
        }
        BraidWord::new(self.strands, letters)
    }

    /// Every substitution variant, the original first.
    pub fn variants(&self) -> Result<Vec<BraidWord>> {
        let k = self.beta4_occurrences();
        (0..1u64 << k).map(|m| self.expand(m)).collect()
    }
}

/// `B = (β₄β₅β₆)⁴ ([δ₆⁻¹] β₆⁻¹β₅⁻¹β₄⁻²β₅⁻¹β₆⁻¹β₇⁻¹) δ₆⁻¹`, at display level.
pub fn kernel_b_display(strands: usize) -> Result<Display4> {
    need(strands, 7, "B")?;
    let d6 = delta6(strands)?;
    let head = BraidWord::from_pairs(strands, &[(4, 1), (5, 1), (6, 1)])?.pow(4);
    let y = BraidWord::from_pairs(strands, &[(6, -1), (5, -1), (4, -2), (5, -1), (6, -1), (7, -1)])?;
    Ok(Display4::from_word(&head)
        .then_word(&y.inverse())
        .then_block(d6.inverse())
        .then_word(&y)
        .then_block(d6.inverse()))
}

/// The element `B`. It does not depend on `g`; the parameter only fixes the
/// default strand count `2g+6`.
pub fn kernel_b(strands: usize) -> Result<BraidWord> {
    kernel_b_display(strands)?.expand(0)
}

/// `D = β_{2g+4} χ β_{2g+4}⁻¹ χ⁻¹`, at display level.
pub fn kernel_d_display(g: usize, strands: usize) -> Result<Display4> {
    need(strands, 2 * g + 4, &format!("D({g})"))?;
    let c = chi(g, strands)?;
    let b = BraidWord::gen(strands, 2 * g + 4, 1)?;
    let w = b.mul(&c)?.mul(&b.inverse())?.mul(&c.inverse())?;
    Ok(Display4::from_word(&w))
}

pub fn kernel_d(g: usize, strands: usize) -> Result<BraidWord> {
    kernel_d_display(g, strands)?.expand(0)
}

/// A named element, as accepted by [`named`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Named {
    Delta4,
    Delta6,
    DeltaK(usize),
    Chi(usize),
    B(usize),
    D(usize),
    /// The `i`-th Birman–Wajnryb generator in list order.
    BwGenerator(usize),
}

pub fn named(name: Named, strands: usize) -> Result<BraidWord> {
    match name {
        Named::Delta4 => delta4(strands),
        Named::Delta6 => delta6(strands),
        Named::DeltaK(k) => delta_k(k, strands),
        Named::Chi(g) => chi(g, strands),
        Named::B(_) => kernel_b(strands),
        Named::D(g) => kernel_d(g, strands),
        Named::BwGenerator(i) => bw_generator_set(strands)?
            .into_iter()
            .nth(i)
            .ok_or_else(|| Error::Unsupported(format!("no BW generator {i} on {strands} strands"))),
    }
}

/// `β₀, β₁³, β₂, …, β_{n-2}` and, for `n ≥ 6`, `δ₄`.
pub fn bw_generator_set(strands: usize) -> Result<Vec<BraidWord>> {
    if strands < 3 {
        return Err(Error::Unsupported(format!("BW generators need n >= 3, got {strands}")));
    }
    let mut out = vec![BraidWord::gen(strands, 0, 1)?, BraidWord::gen(strands, 1, 3)?];
    for i in 2..=strands - 2 {
        out.push(BraidWord::gen(strands, i, 1)?);
    }
    if strands >= 6 {
        out.push(delta4(strands)?);
    }
    Ok(out)
}

/// Short labels matching [`bw_generator_set`], e.g. `b1^3`, `d4`.
pub fn bw_generator_labels(strands: usize) -> Vec<String> {
    let mut out = vec!["b0".to_string(), "b1^3".to_string()];
    for i in 2..=strands.saturating_sub(2) {
        out.push(format!("b{i}"));
    }
    if strands >= 6 {
        out.push("d4".into());
    }
    out
}

// ---------------------------------------------------------------------------
// Text grammar.

/// Parse a braid word on `strands` strands.
///
/// Tokens: `b<i>`, `d4`, `d6`, `dN(<k>)`, `chi(<g>)`, `B(<g>)`, `D(<g>)`,
/// parenthesized groups, and `[x]y` for `y⁻¹xy` where `x` is a bracketed word
/// and `y` a single token. Any token may carry `^<k>` with `k` a nonzero
/// integer. Tokens are separated by whitespace or `*`; `e` and `1` denote
/// the empty word.
pub fn parse_word(text: &str, strands: usize) -> Result<BraidWord> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        strands,
    };
    let w = p.sequence()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(w)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    strands: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at byte {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_whitespace() || self.src[self.pos] == b'*') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some(b'-') || self.peek() == Some(b'+') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected a number"))
    }

    fn paren_number(&mut self) -> Result<usize> {
        if !self.eat("(") {
            return Err(self.err("expected '('"));
        }
        let k = self.number()?;
        if !self.eat(")") || k < 0 {
            return Err(self.err("expected a non-negative number and ')'"));
        }
        Ok(k as usize)
    }

    fn sequence(&mut self) -> Result<BraidWord> {
        let mut out = BraidWord::identity(self.strands);
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(b')') | Some(b']') => return Ok(out),
                _ => {
                    let t = self.powered()?;
                    out = out.mul(&t)?;
                }
            }
        }
    }

    fn powered(&mut self) -> Result<BraidWord> {
        let base = self.atom()?;
        if self.eat("^") {
            let k = self.number()?;
            if k == 0 {
                return Err(self.err("zero exponent"));
            }
            return Ok(base.pow(k as i32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BraidWord> {
        let n = self.strands;
        if self.eat("(") {
            let w = self.sequence()?;
            if !self.eat(")") {
                return Err(self.err("expected ')'"));
            }
            return Ok(w);
        }
        if self.eat("[") {
            let x = self.sequence()?;
            if !self.eat("]") {
                return Err(self.err("expected ']'"));
            }
            let y = self.powered()?;
            return x.conj_by(&y);
        }
        if self.eat("dN") {
            let k = self.paren_number()?;
            return delta_k(k, n);
        }
        if self.eat("d4") {
            return delta4(n);
        }
        if self.eat("d6") {
            return delta6(n);
        }
        if self.eat("chi") {
            let g = self.paren_number()?;
            return chi(g, n);
        }
        if self.eat("B") {
            let _g = self.paren_number()?;
            return kernel_b(n);
        }
        if self.eat("D") {
            let g = self.paren_number()?;
            return kernel_d(g, n);
        }
        if self.eat("b") {
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let i: usize = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| self.err("expected generator index"))?;
            return BraidWord::gen(n, i, 1);
        }
        if self.eat("e") || self.eat("1") {
            return Ok(BraidWord::identity(n));
        }
        Err(self.err("unexpected token"))
    }
}

// ---------------------------------------------------------------------------
// Conjugation identities from the generator proofs.

/// One identity check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub strands: usize,
    /// `true` when the identity is claimed as an equality of braids; `false`
    /// for steps that only hold modulo the moves.
    pub exact: bool,
    pub holds: bool,
    pub lhs: BraidWord,
    pub rhs: BraidWord,
}

fn desc_word(n: usize, from: usize, to: usize) -> BraidWord {
    descending(n, from, to)
}

fn check(out: &mut Vec<IdentityCheck>, name: String, n: usize, exact: bool, lhs: &BraidWord, rhs: &BraidWord) -> Result<()> {
    out.push(IdentityCheck {
        name,
        strands: n,
        exact,
        holds: words_equal(lhs, rhs)?,
        lhs: lhs.clone(),
        rhs: rhs.clone(),
    });
    Ok(())
}

/// `w x w⁻¹`.
fn wxw(w: &BraidWord, x: &BraidWord) -> Result<BraidWord> {
    w.mul(x)?.mul(&w.inverse())
}

/// Every conjugation identity used in the proof that the listed elements
/// generate, for even `n` in `8..=12`.
pub fn identities_suite(n: usize) -> Result<Vec<IdentityCheck>> {
    if !(8..=12).contains(&n) || n % 2 != 0 {
        return Err(Error::Unsupported(format!("identity suite needs even n in 8..=12, got {n}")));
    }
    let b = |i: usize| BraidWord::gen(n, i, 1).expect("index in range");
    let d4 = delta4(n)?;
    let mut out = Vec::new();

    // Path from ρ_56 to ρ̃_56 at n = 8.
    if n == 8 {
        let w = b(5).mul(&d4)?.mul(&b(6))?.mul(&b(5))?;
        check(&mut out, "w=b5 d4 b6 b5: w b6 w^-1 = d4".into(), n, true, &wxw(&w, &b(6))?, &d4)?;
    }

    if n >= 10 {
        let dn = delta_k(n - 2, n)?;
        let w = BraidWord::from_pairs(n, &[(n - 4, 1), (n - 5, 1), (n - 3, 1), (n - 4, 1), (n - 2, 1), (n - 3, 1)])?;
        let w = dn.mul(&w)?;
        let rhs = wxw(&dn, &b(n - 5))?;
        check(
            &mut out,
            format!("w=dN({k}) b{a} b{c} b{d} b{a} b{e} b{d}: w b{e} w^-1 = dN({k}) b{c} dN({k})^-1",
                k = n - 2, a = n - 4, c = n - 5, d = n - 3, e = n - 2),
            n,
            true,
            &wxw(&w, &b(n - 2))?,
            &rhs,
        )?;
    }

    // w = β_{n-3}⋯β₂ β_{n-2}⋯β₃ joins ρ̃_{n-2,n-1} to ρ̃_23.
    let w = desc_word(n, n - 3, 2).mul(&desc_word(n, n - 2, 3))?;
    check(&mut out, format!("w=b{}..b2 b{}..b3: w b2 w^-1 = b{}", n - 3, n - 2, n - 2), n, true, &wxw(&w, &b(2))?, &b(n - 2))?;
    for i in 4..=n - 2 {
        check(
            &mut out,
            format!("w=b{}..b2 b{}..b3: w b{i} w^-1 = b{}", n - 3, n - 2, i - 2),
            n,
            true,
            &wxw(&w, &b(i))?,
            &b(i - 2),
        )?;
    }

    if n >= 10 {
        let w = desc_word(n, n - 2, 7);
        check(
            &mut out,
            format!("w=b{}..b7: w b{} w^-1 = b{}", n - 2, n - 2, n - 3),
            n,
            true,
            &wxw(&w, &b(n - 2))?,
            &b(n - 3),
        )?;
    }

    // w = β_{n-2}⋯β₅ δ₄ β₄β₅⋯β_{n-2}, tail for lassos at ρ_{n-1}.
    let w = desc_word(n, n - 2, 5)
        .mul(&d4)?
        .mul(&ascending(n, 4, n - 2, 1))?;
    let wname = format!("w=b{}..b5 d4 b4..b{}", n - 2, n - 2);
    for i in (0..=n - 2).filter(|&i| i != 3 && i != 4) {
        let x = if i == 1 { b(1).pow(3) } else { b(i) };
        let name = if i == 1 { "b1^3".to_string() } else { format!("b{i}") };
        check(&mut out, format!("{wname}: w {name} w^-1 = {name}"), n, true, &wxw(&w, &x)?, &x)?;
    }
    check(&mut out, format!("{wname}: w b4 w^-1 = d4"), n, true, &wxw(&w, &b(4))?, &d4)?;
    check(&mut out, format!("{wname}: w d4 w^-1 = b4"), n, true, &wxw(&w, &d4)?, &b(4))?;

    // The chain for w β₃ w⁻¹. The first two lines are braid identities, the
    // remaining ones use the commutation of δ₄ and β₄ modulo M.
    let tail_hi = ascending(n, 5, n - 2, -1);
    let line0 = wxw(&w, &b(3))?;
    let line1 = b(3).conj_by(&w.inverse())?;
    let line2 = b(3).conj_by(&b(4).inverse().mul(&d4.inverse())?.mul(&tail_hi)?)?;
    let line3 = b(3).conj_by(&d4.inverse().mul(&b(4).inverse())?.mul(&tail_hi)?)?;
    let line4 = b(3).conj_by(&b(4).inverse().mul(&tail_hi)?)?;
    check(&mut out, format!("{wname}: w b3 w^-1 = [b3]w^-1"), n, true, &line0, &line1)?;
    check(&mut out, format!("{wname}: [b3]w^-1 = [b3]b4^-1 d4^-1 b5^-1..b{}^-1", n - 2), n, true, &line1, &line2)?;
    check(&mut out, "chain: swap d4^-1 b4^-1".into(), n, false, &line2, &line3)?;
    check(&mut out, "chain: drop d4^-1".into(), n, false, &line3, &line4)?;
    Ok(out)
}

/// The two lassos compared through the handle picture:
/// `[β₃]β₄⁻¹⋯β_{n-2}⁻¹` and `[β_{n-2}]β_{n-3}⁻¹⋯β₄⁻¹`.
pub fn handle_pair(n: usize) -> Result<(BraidWord, BraidWord)> {
    if n < 6 {
        return Err(Error::Unsupported(format!("handle pair needs n >= 6, got {n}")));
    }
    let lhs = BraidWord::gen(n, 3, 1)?.conj_by(&ascending(n, 4, n - 2, -1))?;
    let tail = BraidWord::new(n, (4..=n - 3).rev().map(|i| Letter::new(i, -1)).collect())?;
    let rhs = BraidWord::gen(n, n - 2, 1)?.conj_by(&tail)?;
    Ok((lhs, rhs))
}

/// The handle pair with the right-hand tail running down to `β₃⁻¹`:
/// `[β₃]β₄⁻¹⋯β_{n-2}⁻¹` and `[β_{n-2}]β_{n-3}⁻¹⋯β₃⁻¹`. Both sides are
/// liftable over `ρ_{2,3,n-1}`.
pub fn handle_pair_to_b3(n: usize) -> Result<(BraidWord, BraidWord)> {
    let (lhs, _) = handle_pair(n)?;
    let tail = BraidWord::new(n, (3..=n - 3).rev().map(|i| Letter::new(i, -1)).collect())?;
    Ok((lhs, BraidWord::gen(n, n - 2, 1)?.conj_by(&tail)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, n: usize) -> BraidWord {
        parse_word(s, n).unwrap()
    }

    #[test]
    fn artin_basic() {
        let b0 = w("b0", 4);
        let a0 = FreeWord::generator(0);
        assert_eq!(artin_apply(&b0, &a0).unwrap(), FreeWord::from_letters(&[1, 2, -1]));
        let a01 = FreeWord::from_letters(&[1, 2]);
        assert_eq!(artin_apply(&b0, &a01).unwrap(), a01);
        let f = FreeWord::from_letters(&[3, -1, 2]);
        assert_eq!(artin_apply(&w("b0 b0^-1", 4), &f).unwrap(), f);
        assert!(artin_apply(&b0, &FreeWord::generator(5)).is_err());
    }

    #[test]
    fn basic_relations() {
        assert!(words_equal(&w("b0 b2", 4), &w("b2 b0", 4)).unwrap());
        assert!(words_equal(&w("b0 b1 b0", 4), &w("b1 b0 b1", 4)).unwrap());
        assert!(!words_equal(&w("b0 b1", 4), &w("b1 b0", 4)).unwrap());
        assert!(words_equal(&w("b0", 4), &w("b0", 5)).is_err());
    }

    #[test]
    fn delta4_expansion() {
        let d = delta4(6).unwrap();
        assert_eq!(d.len(), 19);
        assert_eq!(
            d.to_string(),
            "b1^-1 b2^-1 b3^-2 b2^-1 b1^-2 b2^-1 b3^-1 b4 b3 b2 b1^2 b2 b3^2 b2 b1"
        );
        assert!(delta4(5).is_err());
    }

    #[test]
    fn named_kernel_words() {
        assert_eq!(chi(2, 10).unwrap().to_string(), "b7 b6 b5 b4^2 b5 b6 b7");
        let c = chi(2, 10).unwrap();
        let b8 = BraidWord::gen(10, 8, 1).unwrap();
        let expect = b8.mul(&c).unwrap().mul(&b8.inverse()).unwrap().mul(&c.inverse()).unwrap();
        assert_eq!(kernel_d(2, 10).unwrap(), expect);
        assert_eq!(kernel_d_display(2, 10).unwrap().beta4_occurrences(), 4);
        assert_eq!(kernel_b_display(10).unwrap().beta4_occurrences(), 8);
        assert!(kernel_d(2, 9).is_err());
    }

    #[test]
    fn case_b_identity_at_ten() {
        let n = 10;
        let ww = w("b7 b6 b5 b4 b3 b2 b8 b7 b6 b5 b4 b3", n);
        let lhs = ww.mul(&w("b2", n)).unwrap().mul(&ww.inverse()).unwrap();
        assert!(words_equal(&lhs, &w("b8", n)).unwrap());
    }

    #[test]
    fn parser_forms() {
        let n = 8;
        assert_eq!(w("b1^3", n), w("b1 b1 b1", n));
        assert_eq!(w("b2^-1", n), BraidWord::gen(n, 2, -1).unwrap());
        assert_eq!(w("[b4]b3", n), w("b3^-1 b4 b3", n));
        assert_eq!(w("[b4](b3 b2)", n), w("b2^-1 b3^-1 b4 b3 b2", n));
        assert_eq!(w("d4^-1", n), delta4(n).unwrap().inverse());
        assert_eq!(w("(b1 b2)^2", n), w("b1 b2 b1 b2", n));
        assert_eq!(w("dN(4)", n), delta_k(4, n).unwrap());
        assert_eq!(w("e", n), BraidWord::identity(n));
        assert_eq!(w("", n), BraidWord::identity(n));
        assert!(parse_word("b7", 8).is_err());
        assert!(parse_word("x1", 8).is_err());
        assert!(parse_word("b1^0", 8).is_err());
        let word = w("b1^-2 b3 b0", n);
        assert_eq!(parse_word(&word.to_string(), n).unwrap(), word);
    }

    #[test]
    fn bw_generators() {
        let six: Vec<String> = bw_generator_set(6).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(six.len(), 6);
        assert_eq!(&six[..5], &["b0", "b1^3", "b2", "b3", "b4"]);
        assert_eq!(bw_generator_set(5).unwrap().len(), 4);
        assert_eq!(bw_generator_labels(6), vec!["b0", "b1^3", "b2", "b3", "b4", "d4"]);
    }

    #[test]
    fn json_shape() {
        let x = w("b1 b0^-1", 3);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"strands":3,"letters":[[1,1],[0,-1]]}"#);
        let back: BraidWord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn word(n: usize, max: usize) -> impl Strategy<Value = BraidWord> {
            prop::collection::vec((0..n - 1, prop::bool::ANY), 0..max).prop_map(move |v| {
                BraidWord::new(n, v.into_iter().map(|(i, s)| Letter::new(i, if s { 1 } else { -1 })).collect()).unwrap()
            })
        }

        proptest! {
            #[test]
            fn boundary_is_fixed(x in word(6, 24)) {
                let bd = FreeWord::boundary(6);
                prop_assert_eq!(artin_apply(&x, &bd).unwrap(), bd);
            }

            #[test]
            fn inverse_is_trivial(x in word(5, 20)) {
                prop_assert!(is_trivial(&x.mul(&x.inverse()).unwrap()));
            }

            #[test]
            fn equality_is_a_congruence(x in word(5, 10), y in word(5, 10), z in word(5, 10)) {
                let xy = x.mul(&y).unwrap();
                let yx = y.mul(&x).unwrap();
                let eq = words_equal(&xy, &yx).unwrap();
                prop_assert_eq!(eq, words_equal(&z.mul(&xy).unwrap(), &z.mul(&yx).unwrap()).unwrap());
                prop_assert_eq!(eq, words_equal(&xy.mul(&z).unwrap(), &yx.mul(&z).unwrap()).unwrap());
            }

            #[test]
            fn images_compose(x in word(5, 12), y in word(5, 12)) {
                let f = FreeWord::from_letters(&[1, -3, 4, 2]);
                let lhs = artin_apply(&x.mul(&y).unwrap(), &f).unwrap();
                let rhs = artin_apply(&x, &artin_apply(&y, &f).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
