//! Endomorphisms of a free group by basis images, and formal words in the
//! named automorphism generators.
//!
//! Products compose left to right throughout: `(x)(gh) = ((x)g)h`, the
//! conjugate `g^h` is `h^{-1} g h`, and `[g, h] = g^{-1} h^{-1} g h`.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::word::{FreeWord, Letter};
use num_bigint::BigInt;
use std::fmt;

/// A rank-n endomorphism given by the images of `x_1 .. x_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    rank: usize,
    images: Vec<FreeWord>,
}

impl Endomorphism {
    pub fn identity(rank: usize) -> Self {
        let images = (1..=rank)
            .map(|i| FreeWord::generator(rank, i, 1).expect("index in range"))
            .collect();
        Endomorphism { rank, images }
    }

    pub fn new(rank: usize, images: Vec<FreeWord>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::Invalid(format!(
                "expected {rank} images, got {}",
                images.len()
            )));
        }
        for img in &images {
            if img.rank() != rank {
                return Err(Error::RankMismatch { left: rank, right: img.rank() });
            }
        }
        Ok(Endomorphism { rank, images })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &FreeWord {
        &self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        *self == Endomorphism::identity(self.rank)
    }

    /// Homomorphic substitution: each letter of `u` is replaced by the
    /// corresponding image (inverted for negative letters), freely reduced.
    pub fn apply(&self, u: &FreeWord) -> Result<FreeWord> {
        if u.rank() != self.rank {
            return Err(Error::RankMismatch { left: self.rank, right: u.rank() });
        }
        let inverses: Vec<Option<FreeWord>> = self
            .images
            .iter()
            .map(|w| Some(w.invert()))
            .collect();
        let mut out = FreeWord::identity(self.rank);
        let mut buffer: Vec<Letter> = Vec::new();
        for l in u.letters() {
            let piece = if l.sign > 0 {
                &self.images[l.index - 1]
            } else {
                inverses[l.index - 1].as_ref().expect("populated above")
            };
            buffer.extend_from_slice(piece.letters());
        }
        if !buffer.is_empty() {
            out = FreeWord::from_letters(self.rank, buffer)?;
        }
        Ok(out)
    }

    /// `self · other` in the left-to-right convention: apply `self` first.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        let images = self
            .images
            .iter()
            .map(|img| other.apply(img))
            .collect::<Result<Vec<_>>>()?;
        Ok(Endomorphism { rank: self.rank, images })
    }

    /// Row i holds the exponent vector of the image of `x_i`.
    pub fn abelianization_matrix(&self) -> IntMatrix {
        let n = self.rank;
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = BigInt::from(self.images[i].exponent_sum(j + 1).expect("j in range"));
            }
        }
        m
    }

    /// True iff the induced map on the abelianization is the identity.
    pub fn is_ia(&self) -> bool {
        self.abelianization_matrix().is_identity()
    }

    /// Shape of the basis images: are all images palindromes, and does the
    /// image of each `x_i` literally decompose as `u x_i reverse(u)`?
    pub fn palindromic_shape(&self) -> PalindromicShape {
        let all_palindromic = self.images.iter().all(FreeWord::is_palindrome);
        let elementary = (1..=self.rank).all(|i| {
            let img = self.images[i - 1].letters();
            if img.len() % 2 == 0 {
                return false;
            }
            let mid = img.len() / 2;
            img[mid] == Letter::new(i, 1) && (0..mid).all(|p| img[p] == img[img.len() - 1 - p])
        });
        PalindromicShape { all_palindromic, elementary }
    }
}

/// Result of [`Endomorphism::palindromic_shape`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct PalindromicShape {
    pub all_palindromic: bool,
    pub elementary: bool,
}

/// A named generator of the palindromic automorphism group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenSym {
    /// `mu(i, j)`: `x_i -> x_j x_i x_j`, all other generators fixed.
    Mu(usize, usize),
    /// `t(i)`: `x_i -> x_i^{-1}`.
    T(usize),
    /// `alpha(i)`: swap `x_i <-> x_{i+1}`.
    Alpha(usize),
}

impl GenSym {
    pub fn validate(self, rank: usize) -> Result<()> {
        match self {
            GenSym::Mu(i, j) => {
                if i == 0 || i > rank {
                    return Err(Error::IndexOutOfRange { index: i, rank });
                }
                if j == 0 || j > rank {
                    return Err(Error::IndexOutOfRange { index: j, rank });
                }
                if i == j {
                    return Err(Error::Invalid(format!("mu needs i != j, got ({i}, {j})")));
                }
            }
            GenSym::T(i) => {
                if i == 0 || i > rank {
                    return Err(Error::IndexOutOfRange { index: i, rank });
                }
            }
            GenSym::Alpha(i) => {
                if i == 0 || i + 1 > rank {
                    return Err(Error::IndexOutOfRange { index: i, rank });
                }
            }
        }
        Ok(())
    }

    /// The defining endomorphism (exponent +1).
    pub fn endomorphism(self, rank: usize) -> Result<Endomorphism> {
        self.validate(rank)?;
        self.power(rank, 1)
    }

    /// Closed-form endomorphism of this generator raised to `exp = +-1`.
    ///
    /// `mu(i,j)^{-1}` sends `x_i -> x_j^{-1} x_i x_j^{-1}`; `t` and `alpha`
    /// are involutions so the sign is immaterial for them.
    fn power(self, rank: usize, exp: i8) -> Result<Endomorphism> {
        let mut e = Endomorphism::identity(rank);
        match self {
            GenSym::Mu(i, j) => {
                let xj = FreeWord::generator(rank, j, exp)?;
                let xi = FreeWord::generator(rank, i, 1)?;
                e.images[i - 1] = xj.multiply(&xi)?.multiply(&xj)?;
            }
            GenSym::T(i) => {
                e.images[i - 1] = FreeWord::generator(rank, i, -1)?;
            }
            GenSym::Alpha(i) => {
                e.images.swap(i - 1, i);
            }
        }
        Ok(e)
    }
}

impl fmt::Display for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSym::Mu(i, j) => write!(f, "m{i}{j}"),
            GenSym::T(i) => write!(f, "t{i}"),
            GenSym::Alpha(i) => write!(f, "a{}{}", i, i + 1),
        }
    }
}

/// A formal word in the generator symbols, with merged nonzero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AutWord {
    rank: usize,
    letters: Vec<(GenSym, i64)>,
}

impl AutWord {
    pub fn identity(rank: usize) -> Self {
        AutWord { rank, letters: Vec::new() }
    }

    pub fn new<I>(rank: usize, letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GenSym, i64)>,
    {
        let mut out: Vec<(GenSym, i64)> = Vec::new();
        for (sym, exp) in letters {
            sym.validate(rank)?;
            push_merged(&mut out, sym, exp);
        }
        Ok(AutWord { rank, letters: out })
    }

    pub fn single(rank: usize, sym: GenSym, exp: i64) -> Result<Self> {
        AutWord::new(rank, [(sym, exp)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[(GenSym, i64)] {
        &self.letters
    }

    pub fn is_identity_word(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &AutWord) -> Result<AutWord> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        let mut out = self.letters.clone();
        for &(sym, exp) in &other.letters {
            push_merged(&mut out, sym, exp);
        }
        Ok(AutWord { rank: self.rank, letters: out })
    }

    /// Formal inverse: reversed letters with negated exponents.
    pub fn invert(&self) -> AutWord {
        let letters = self.letters.iter().rev().map(|&(s, e)| (s, -e)).collect();
        AutWord { rank: self.rank, letters }
    }

    /// `self^h = h^{-1} self h`.
    pub fn conjugate(&self, h: &AutWord) -> Result<AutWord> {
        h.invert().multiply(self)?.multiply(h)
    }

    /// `[self, other] = self^{-1} other^{-1} self other`.
    pub fn commutator(&self, other: &AutWord) -> Result<AutWord> {
        self.invert().multiply(&other.invert())?.multiply(self)?.multiply(other)
    }

    /// Left-to-right composition of the generator endomorphisms.
    pub fn evaluate(&self) -> Result<Endomorphism> {
        let mut acc = Endomorphism::identity(self.rank);
        for &(sym, exp) in &self.letters {
            let step = sym.power(self.rank, if exp >= 0 { 1 } else { -1 })?;
            for _ in 0..exp.unsigned_abs() {
                acc = acc.compose(&step)?;
            }
        }
        Ok(acc)
    }

    /// Parses whitespace-separated tokens `m12`, `m12^-3`, `t1`, `a12`.
    ///
    /// Generator indices are single digits, which covers every rank this
    /// toolkit enumerates; `1` or the empty string is the identity.
    pub fn parse(text: &str, rank: usize) -> Result<AutWord> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "1" {
            return Ok(AutWord::identity(rank));
        }
        let mut letters: Vec<(GenSym, i64)> = Vec::new();
        let mut offset = 0usize;
        for tok in trimmed.split_whitespace() {
            let position = text[offset..].find(tok).map(|p| p + offset).unwrap_or(offset);
            offset = position + tok.len();
            let (sym, exp) = parse_aut_token(tok, position)?;
            sym.validate(rank)?;
            if exp != 0 {
                push_merged(&mut letters, sym, exp);
            }
        }
        Ok(AutWord { rank, letters })
    }
}

fn push_merged(out: &mut Vec<(GenSym, i64)>, sym: GenSym, exp: i64) {
    if exp == 0 {
        return;
    }
    match out.last_mut() {
        Some((top, e)) if *top == sym => {
            *e += exp;
            if *e == 0 {
                out.pop();
            }
        }
        _ => out.push((sym, exp)),
    }
}

fn parse_aut_token(tok: &str, position: usize) -> Result<(GenSym, i64)> {
    let err = |message: String| Error::Parse { position, message };
    let (head, exp_part) = match tok.find('^') {
        Some(caret) => (&tok[..caret], Some(&tok[caret + 1..])),
        None => (tok, None),
    };
    let bytes = head.as_bytes();
    let digit = |b: u8| (b - b'0') as usize;
    let sym = match bytes {
        [b'm', i, j] if i.is_ascii_digit() && j.is_ascii_digit() => GenSym::Mu(digit(*i), digit(*j)),
        [b't', i] if i.is_ascii_digit() => GenSym::T(digit(*i)),
        [b'a', i, j] if i.is_ascii_digit() && j.is_ascii_digit() => {
            if digit(*j) != digit(*i) + 1 {
                return Err(err(format!("alpha swaps adjacent indices, got `{head}`")));
            }
            GenSym::Alpha(digit(*i))
        }
        _ => return Err(err(format!("unrecognized generator token `{tok}`"))),
    };
    let exp = match exp_part {
        None => 1,
        Some(e) => {
            let v: i64 = e.parse().map_err(|_| err(format!("bad exponent in `{tok}`")))?;
            if v == 0 {
                return Err(err(format!("zero exponent in `{tok}`")));
            }
            v
        }
    };
    Ok((sym, exp))
}

impl fmt::Display for AutWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(sym, exp) in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{exp}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(text: &str, rank: usize) -> Endomorphism {
        AutWord::parse(text, rank).unwrap().evaluate().unwrap()
    }

    fn w(text: &str, rank: usize) -> FreeWord {
        FreeWord::parse(text, rank).unwrap()
    }

    #[test]
    fn mu_generator_images() {
        let m12 = ev("m12", 2);
        assert_eq!(m12.image(1), &w("x2 x1 x2", 2));
        assert_eq!(m12.image(2), &w("x2", 2));
        let m23 = ev("m23", 3);
        assert_eq!(m23.image(2), &w("x3 x2 x3", 3));
    }

    #[test]
    fn mu_inverse_closed_form() {
        let inv = ev("m12^-1", 2);
        assert_eq!(inv.image(1), &w("x2^-1 x1 x2^-1", 2));
        assert!(ev("m12 m12^-1", 2).is_identity());
    }

    #[test]
    fn t_and_alpha_generators() {
        let t1 = ev("t1", 2);
        assert_eq!(t1.apply(&w("x1 x2", 2)).unwrap(), w("x1^-1 x2", 2));
        assert!(ev("t1 t1", 2).is_identity());
        let a = ev("a12", 2);
        assert_eq!(a.image(1), &w("x2", 2));
        assert_eq!(a.image(2), &w("x1", 2));
        // t1 t2 t3 is the global inversion at rank 3.
        let t = ev("t1 t2 t3", 3);
        for i in 1..=3 {
            assert_eq!(t.image(i), &w(&format!("x{i}^-1"), 3));
        }
    }

    #[test]
    fn apply_is_homomorphic() {
        let e = ev("m12 m21^-1 t1", 2);
        let u = w("x1 x2^-1", 2);
        let v = w("x2 x1", 2);
        let uv = u.multiply(&v).unwrap();
        assert_eq!(
            e.apply(&uv).unwrap(),
            e.apply(&u).unwrap().multiply(&e.apply(&v).unwrap()).unwrap()
        );
        assert!(e.apply(&FreeWord::identity(2)).unwrap().is_identity());
    }

    #[test]
    fn compose_order_is_left_to_right() {
        let c = ev("m12 m21", 2);
        assert_eq!(c.image(1), &w("x1 x2 x1^3 x2 x1", 2));
        assert_eq!(c.image(2), &w("x1 x2 x1", 2));
        let e = ev("m12 t2 m21^-2", 2);
        assert_eq!(e.compose(&Endomorphism::identity(2)).unwrap(), e);
    }

    #[test]
    fn collins_relation_as_equality() {
        assert_eq!(ev("m13 m23 m12", 3), ev("m12 m23 m13^-1", 3));
        assert_ne!(ev("m23 m21", 3), ev("m21 m23", 3));
    }

    #[test]
    fn abelianization_matrices() {
        assert_eq!(
            ev("m12", 2).abelianization_matrix(),
            IntMatrix::from_rows(&[&[1, 2], &[0, 1]])
        );
        assert!(Endomorphism::identity(3).abelianization_matrix().is_identity());
        assert_eq!(
            ev("m13", 3).abelianization_matrix(),
            IntMatrix::transvection(3, 1, 3, 2).unwrap()
        );
    }

    #[test]
    fn ia_detection() {
        assert!(ev("m13^-1 m12^-1 m13 m12", 3).is_ia());
        assert!(!ev("m12", 3).is_ia());
        assert!(Endomorphism::identity(3).is_ia());
    }

    #[test]
    fn palindromic_shapes() {
        let s = ev("m12", 2).palindromic_shape();
        assert_eq!(s, PalindromicShape { all_palindromic: true, elementary: true });
        let s = ev("t1", 2).palindromic_shape();
        assert_eq!(s, PalindromicShape { all_palindromic: true, elementary: false });
        let e = Endomorphism::new(2, vec![w("x1 x2", 2), w("x2", 2)]).unwrap();
        let s = e.palindromic_shape();
        assert_eq!(s, PalindromicShape { all_palindromic: false, elementary: false });
        // alpha images are palindromes of the other generator.
        let s = ev("a12", 2).palindromic_shape();
        assert_eq!(s, PalindromicShape { all_palindromic: true, elementary: false });
    }

    #[test]
    fn autword_parse_and_print() {
        let word = AutWord::parse("m12^-3 t1 a12", 3).unwrap();
        assert_eq!(word.to_string(), "m12^-3 t1 a12");
        assert_eq!(AutWord::parse("1", 3).unwrap(), AutWord::identity(3));
        // adjacent equal symbols merge, zero exponents drop
        let merged = AutWord::parse("m12 m12^2 m12^-3 t1", 3).unwrap();
        assert_eq!(merged.to_string(), "t1");
        assert!(AutWord::parse("m11", 3).is_err());
        assert!(AutWord::parse("a13", 3).is_err());
        assert!(AutWord::parse("m14", 3).is_err());
        assert!(AutWord::parse("q2", 3).is_err());
    }

    #[test]
    fn evaluate_respects_word_product() {
        let u = AutWord::parse("m12 t1", 2).unwrap();
        let v = AutWord::parse("m21^-1 a12", 2).unwrap();
        let both = u.multiply(&v).unwrap().evaluate().unwrap();
        let composed = u.evaluate().unwrap().compose(&v.evaluate().unwrap()).unwrap();
        assert_eq!(both, composed);
        let inv = u.multiply(&u.invert()).unwrap();
        assert!(inv.is_identity_word());
    }

    #[test]
    fn commutator_and_conjugate_convention() {
        let g = AutWord::parse("m12", 2).unwrap();
        let h = AutWord::parse("t1", 2).unwrap();
        // g^h = h^-1 g h evaluates to m12^-1 by the action rule.
        let conj = g.conjugate(&h).unwrap().evaluate().unwrap();
        assert_eq!(conj, ev("m12^-1", 2));
        let c = g.commutator(&h).unwrap();
        assert_eq!(c.to_string(), "m12^-1 t1^-1 m12 t1");
    }
}
