//! Permutations in one-line notation, unshuffles and Koszul signs.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{1..m}`, stored by its images `σ(1), …, σ(m)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &i in &images {
            if i == 0 || i > m || seen[i - 1] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (1..=m).collect(),
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Inversion pairs `(a, b)` with `a < b` positions and `σ(a) > σ(b)`.
    fn inversions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.len();
        (0..m).flat_map(move |a| {
            (a + 1..m)
                .filter(move |&b| self.images[a] > self.images[b])
                .map(move |b| (a, b))
        })
    }

    /// `(−1)^σ`.
    pub fn sign(&self) -> i32 {
        if self.inversions().count() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All permutations of `{1..m}` in lexicographic order.
    pub fn all(m: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=m).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Reorders `items` as `items[σ(1)], …, items[σ(m)]`.
    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| items[i - 1].clone()).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.images.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// The `(p, q)`-unshuffles: permutations with `σ(i) < σ(i+1)` for `i ≠ p`.
///
/// Ordered lexicographically by the first block, so `Sh(2,1)` lists
/// `[1 2 3], [1 3 2], [2 3 1]`.
pub fn unshuffles(p: usize, q: usize) -> Vec<Permutation> {
    let m = p + q;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(p);
    fn rec(start: usize, m: usize, p: usize, chosen: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if chosen.len() == p {
            let mut images = chosen.clone();
            images.extend((1..=m).filter(|i| !chosen.contains(i)));
            out.push(Permutation { images });
            return;
        }
        for i in start..=m {
            if m - i + 1 < p - chosen.len() {
                break;
            }
            chosen.push(i);
            rec(i + 1, m, p, chosen, out);
            chosen.pop();
        }
    }
    rec(1, m, p, &mut chosen, &mut out);
    out
}

/// Koszul sign `ε(σ)` of reordering graded elements `x_1…x_m` into
/// `x_{σ(1)}…x_{σ(m)}` in a graded-commutative algebra. The permutation sign
/// `(−1)^σ` is not included.
pub fn koszul_sign(sigma: &Permutation, degrees: &[i64]) -> Result<i32> {
    if degrees.len() != sigma.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} degrees for a permutation of {}",
            degrees.len(),
            sigma.len()
        )));
    }
    let mut sign = 1;
    for (a, b) in sigma.inversions() {
        let da = degrees[sigma.images[a] - 1];
        let db = degrees[sigma.images[b] - 1];
        if (da * db).rem_euclid(2) == 1 {
            sign = -sign;
        }
    }
    Ok(sign)
}
