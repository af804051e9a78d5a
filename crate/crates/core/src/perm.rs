//! Signed permutations: the extended symmetric group `ES_n` of order `2^n n!`.
//!
//! An element sends `x_i` to `x_{perm(i)}^{sign(i)}`. Rank-2 elements carry
//! the canonical names `{id, s, d, sd, r, sr, dr, sdr}` for
//! `{1, sigma, delta, sigma delta, rho, sigma rho, delta rho, sigma delta rho}`,
//! where `sigma = t1`, `delta = t2`, `rho = a12`.

use crate::endo::{AutWord, Endomorphism, GenSym};
use crate::error::{Error, Result};
use crate::word::FreeWord;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    /// 0-based images: `x_{i+1}` maps to `x_{perm[i]+1}`.
    perm: Vec<usize>,
    /// Sign attached to the image of `x_{i+1}`.
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(rank: usize) -> Self {
        SignedPermutation { perm: (0..rank).collect(), signs: vec![1; rank] }
    }

    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::Invalid("perm and signs lengths differ".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Invalid("not a permutation".into()));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Invalid("signs must be +-1".into()));
        }
        Ok(SignedPermutation { perm, signs })
    }

    /// The inversion `t_i` (1-based).
    pub fn t(rank: usize, i: usize) -> Result<Self> {
        if i == 0 || i > rank {
            return Err(Error::IndexOutOfRange { index: i, rank });
        }
        let mut e = Self::identity(rank);
        e.signs[i - 1] = -1;
        Ok(e)
    }

    /// The adjacent swap `alpha_{i,i+1}` (1-based).
    pub fn alpha(rank: usize, i: usize) -> Result<Self> {
        if i == 0 || i + 1 > rank {
            return Err(Error::IndexOutOfRange { index: i, rank });
        }
        let mut e = Self::identity(rank);
        e.perm.swap(i - 1, i);
        Ok(e)
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    /// 1-based image index of `x_i`.
    pub fn image_index(&self, i: usize) -> usize {
        self.perm[i - 1] + 1
    }

    /// Sign of the image of `x_i`.
    pub fn image_sign(&self, i: usize) -> i8 {
        self.signs[i - 1]
    }

    /// `self · other`, applying `self` first (left-to-right convention).
    pub fn compose(&self, other: &SignedPermutation) -> Result<SignedPermutation> {
        let n = self.rank();
        if n != other.rank() {
            return Err(Error::RankMismatch { left: n, right: other.rank() });
        }
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            perm[i] = other.perm[self.perm[i]];
            signs[i] = self.signs[i] * other.signs[self.perm[i]];
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.rank();
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }

    /// The evaluated endomorphism `x_i -> x_{perm(i)}^{sign(i)}`.
    pub fn to_endomorphism(&self) -> Endomorphism {
        let n = self.rank();
        let images = (1..=n)
            .map(|i| {
                FreeWord::generator(n, self.image_index(i), self.image_sign(i))
                    .expect("valid index")
            })
            .collect();
        Endomorphism::new(n, images).expect("rank matches")
    }

    /// A word in `t`/`alpha` generators evaluating to this element.
    ///
    /// Sorts the permutation part with adjacent swaps, then flips signs.
    pub fn to_autword(&self) -> AutWord {
        let n = self.rank();
        let mut letters: Vec<(GenSym, i64)> = Vec::new();
        // Adjacent transpositions building the permutation left-to-right:
        // selection sort emitting alpha swaps.
        let mut cur: Vec<usize> = (0..n).collect(); // cur[i] = current image of slot i
        for target in 0..n {
            let pos = (target..n).find(|&p| cur[p] == self.perm[target]).expect("permutation");
            for p in (target..pos).rev() {
                // swap slots p, p+1 via alpha_{p+1}
                cur.swap(p, p + 1);
                letters.push((GenSym::Alpha(p + 1), 1));
            }
        }
        // letters now evaluates to a signed permutation with the right perm
        // part and all-positive signs when applied AFTER nothing... verify
        // direction: applying the alphas left-to-right produces `perm`.
        for i in 0..n {
            if self.signs[i] == -1 {
                // t acts on the slot carrying x_{i+1} after the permutation:
                // in left-to-right order, sign flips commute to the front as
                // t_{i+1} conjugated; simplest is to prepend t on the source.
                letters.insert(0, (GenSym::T(i + 1), 1));
            }
        }
        let word = AutWord::new(n, letters).expect("valid letters");
        debug_assert_eq!(
            word.evaluate().expect("valid").images(),
            self.to_endomorphism().images()
        );
        word
    }

    /// All `2^n n!` elements, identity first; order is deterministic.
    pub fn enumerate(rank: usize) -> Vec<SignedPermutation> {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut base: Vec<usize> = (0..rank).collect();
        heap_permutations(&mut base, rank, &mut perms);
        perms.sort();
        let mut out = Vec::new();
        for perm in perms {
            for mask in 0..(1u32 << rank) {
                let signs = (0..rank)
                    .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                    .collect();
                out.push(SignedPermutation { perm: perm.clone(), signs });
            }
        }
        out
    }
}

fn heap_permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(v.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(v, k - 1, out);
        if k % 2 == 0 {
            v.swap(i, k - 1);
        } else {
            v.swap(0, k - 1);
        }
    }
}

/// The eight rank-2 elements with their canonical short names.
pub fn es2_elements() -> Vec<(&'static str, SignedPermutation)> {
    let t1 = SignedPermutation::t(2, 1).expect("rank 2");
    let t2 = SignedPermutation::t(2, 2).expect("rank 2");
    let a = SignedPermutation::alpha(2, 1).expect("rank 2");
    let c = |parts: &[&SignedPermutation]| {
        parts.iter().fold(SignedPermutation::identity(2), |acc, p| {
            acc.compose(p).expect("rank 2")
        })
    };
    vec![
        ("id", SignedPermutation::identity(2)),
        ("s", t1.clone()),
        ("d", t2.clone()),
        ("sd", c(&[&t1, &t2])),
        ("r", a.clone()),
        ("sr", c(&[&t1, &a])),
        ("dr", c(&[&t2, &a])),
        ("sdr", c(&[&t1, &t2, &a])),
    ]
}

/// Canonical name of a rank-2 element.
pub fn es2_name(e: &SignedPermutation) -> Option<&'static str> {
    es2_elements().into_iter().find(|(_, p)| p == e).map(|(n, _)| n)
}

/// Looks a rank-2 element up by name; accepts short and spelled-out forms.
pub fn es2_by_name(name: &str) -> Result<SignedPermutation> {
    let key = match name {
        "id" | "1" | "identity" => "id",
        "s" | "sigma" => "s",
        "d" | "delta" => "d",
        "sd" | "sigmadelta" | "t" => "sd",
        "r" | "rho" => "r",
        "sr" | "sigmarho" => "sr",
        "dr" | "deltarho" => "dr",
        "sdr" | "sigmadeltarho" => "sdr",
        other => return Err(Error::UnknownGenerator(other.to_string())),
    };
    Ok(es2_elements()
        .into_iter()
        .find(|(n, _)| *n == key)
        .map(|(_, p)| p)
        .expect("catalog covers all names"))
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() == 2 {
            if let Some(name) = es2_name(self) {
                return write!(f, "{name}");
            }
        }
        let parts: Vec<String> = (1..=self.rank())
            .map(|i| {
                let s = if self.image_sign(i) == 1 { "" } else { "-" };
                format!("{s}{}", self.image_index(i))
            })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_order() {
        assert_eq!(SignedPermutation::enumerate(2).len(), 8);
        assert_eq!(SignedPermutation::enumerate(3).len(), 48);
    }

    #[test]
    fn compose_matches_endomorphisms() {
        for (_, a) in es2_elements() {
            for (_, b) in es2_elements() {
                let via_perm = a.compose(&b).unwrap().to_endomorphism();
                let via_endo = a
                    .to_endomorphism()
                    .compose(&b.to_endomorphism())
                    .unwrap();
                assert_eq!(via_perm, via_endo);
            }
        }
    }

    #[test]
    fn inverse_law() {
        for e in SignedPermutation::enumerate(3) {
            assert!(e.compose(&e.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn es2_names_are_distinct_and_total() {
        let elems = es2_elements();
        assert_eq!(elems.len(), 8);
        for e in SignedPermutation::enumerate(2) {
            assert!(es2_name(&e).is_some());
        }
        // sigma rho has order 4: its square is sigma delta (the center).
        let sr = es2_by_name("sr").unwrap();
        assert_eq!(es2_name(&sr.compose(&sr).unwrap()), Some("sd"));
    }

    #[test]
    fn to_autword_round_trips() {
        for e in SignedPermutation::enumerate(3) {
            let w = e.to_autword();
            assert_eq!(w.evaluate().unwrap(), e.to_endomorphism());
        }
    }

    #[test]
    fn display_uses_es2_names() {
        assert_eq!(es2_by_name("rho").unwrap().to_string(), "r");
        assert_eq!(SignedPermutation::identity(3).to_string(), "[1 2 3]");
    }
}
