//! Permutations under the ℓ∞ metric: distances, anticodes materialized from
//! (0,1)-matrices, ball sizes and the set–antiset code bound.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::clique::max_clique_with;
use crate::matrix::{BinaryMatrix, DenseBinaryMatrix, IntervalMatrix};
use crate::permanent::{permanent, EngineKind};
use crate::{factorial, Error, PermanentValue, Result};

/// Largest order for which anticodes are listed explicitly.
pub const MATERIALIZE_MAX_ORDER: usize = 10;
/// Largest order for the exact maximum-code search (`5! = 120` vertices).
pub const MAX_CODE_MAX_ORDER: usize = 5;

/// A permutation of `1..=n`, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u8::MAX as usize {
            return Err(Error::TooLarge {
                engine: "permutation",
                order: n,
                cap: u8::MAX as usize,
            });
        }
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v < 1 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Invalid(format!("{images:?} is not a permutation of 1..={n}")));
            }
        }
        Ok(Permutation(images.into_iter().map(|v| v as u8).collect()))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `f(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v as usize).collect()
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(Permutation(other.0.iter().map(|&j| self.0[j as usize - 1]).collect()))
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let full = IntervalMatrix::all_ones(n);
        collect_matchings(&full)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// `max_i |f(i) - g(i)|`.
pub fn linf_distance(f: &Permutation, g: &Permutation) -> Result<usize> {
    if f.len() != g.len() {
        return Err(Error::DimensionMismatch {
            expected: f.len(),
            actual: g.len(),
        });
    }
    Ok(f.0
        .iter()
        .zip(&g.0)
        .map(|(&a, &b)| a.abs_diff(b) as usize)
        .max()
        .unwrap_or(0))
}

/// A set of permutations of a common order, kept sorted and duplicate-free.
///
/// Serializes as a JSON array of image vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Permutation>", into = "Vec<Permutation>")]
pub struct PermSet {
    n: usize,
    members: Vec<Permutation>,
}

impl PermSet {
    pub fn new(n: usize, mut members: Vec<Permutation>) -> Result<Self> {
        if let Some(bad) = members.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: bad.len(),
            });
        }
        members.sort_unstable();
        members.dedup();
        Ok(PermSet { n, members })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.binary_search(p).is_ok()
    }
}

impl TryFrom<Vec<Permutation>> for PermSet {
    type Error = Error;
    fn try_from(members: Vec<Permutation>) -> Result<Self> {
        let n = members.first().map_or(0, Permutation::len);
        PermSet::new(n, members)
    }
}

impl From<PermSet> for Vec<Permutation> {
    fn from(s: PermSet) -> Self {
        s.members
    }
}

/// Every permutation `f` with `a_{i,f(i)} = 1` for all `i`, in lexicographic order.
fn collect_matchings<M: BinaryMatrix + ?Sized>(m: &M) -> Vec<Permutation> {
    fn walk(rows: &[u64], used: u64, prefix: &mut Vec<u8>, out: &mut Vec<Permutation>) {
        let row = prefix.len();
        if row == rows.len() {
            out.push(Permutation(prefix.clone()));
            return;
        }
        let mut free = rows[row] & !used;
        while free != 0 {
            let bit = free & free.wrapping_neg();
            free &= free - 1;
            prefix.push(bit.trailing_zeros() as u8 + 1);
            walk(rows, used | bit, prefix, out);
            prefix.pop();
        }
    }
    let rows: Vec<u64> = (0..m.order()).map(|i| m.row_mask(i)).collect();
    let mut out = Vec::new();
    walk(&rows, 0, &mut Vec::with_capacity(rows.len()), &mut out);
    out
}

/// The anticode `{f : a_{i,f(i)} = 1 for all i}` defined by a (0,1)-matrix.
/// Its size is the permanent of the matrix.
pub fn materialize_anticode<M: BinaryMatrix + ?Sized>(m: &M) -> Result<PermSet> {
    let n = m.order();
    if n > MATERIALIZE_MAX_ORDER {
        return Err(Error::TooLarge {
            engine: "materialize",
            order: n,
            cap: MATERIALIZE_MAX_ORDER,
        });
    }
    Ok(PermSet {
        n,
        members: collect_matchings(m),
    })
}

/// Largest pairwise ℓ∞ distance in `s`.
///
/// The maximum over pairs of a maximum over positions equals the maximum over
/// positions of the spread `max_f f(i) - min_f f(i)`, so this is linear in `|s|`.
pub fn anticode_diameter(s: &PermSet) -> Result<usize> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = s.order();
    let mut lo = vec![u8::MAX; n];
    let mut hi = vec![0u8; n];
    for p in s.members() {
        for (i, &v) in p.0.iter().enumerate() {
            lo[i] = lo[i].min(v);
            hi[i] = hi[i].max(v);
        }
    }
    Ok((0..n).map(|i| (hi[i] - lo[i]) as usize).max().unwrap_or(0))
}

/// `a_{i,j} = 1` iff some member maps `i` to `j`.
pub fn matrix_of_set(s: &PermSet) -> Result<DenseBinaryMatrix> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = s.order();
    let mut rows = vec![0u64; n];
    for p in s.members() {
        for (i, &v) in p.0.iter().enumerate() {
            rows[i] |= 1 << (v - 1);
        }
    }
    DenseBinaryMatrix::from_masks(n, rows)
}

/// Number of permutations within distance `radius` of the identity.
pub fn ball_size(n: usize, radius: usize) -> Result<PermanentValue> {
    if n < 1 {
        return Err(Error::Range("ball size needs n >= 1".into()));
    }
    if radius + 1 >= n {
        return Ok(factorial(n));
    }
    permanent(&IntervalMatrix::ball(n, radius), EngineKind::Auto)
}

/// `⌊n! / |A|⌋`, the largest code size compatible with an anticode of size `|A|`.
pub fn set_antiset_bound(n: usize, anticode_size: &PermanentValue) -> Result<PermanentValue> {
    if n < 1 {
        return Err(Error::Range("set-antiset bound needs n >= 1".into()));
    }
    if anticode_size.is_zero() {
        return Err(Error::ZeroAnticode);
    }
    Ok(PermanentValue::from(
        factorial(n).as_biguint() / anticode_size.as_biguint(),
    ))
}

/// A largest subset of `S_n` with pairwise distance at least `dmin`.
///
/// By right invariance some optimal code contains the identity, so the search
/// fixes it and looks for a maximum clique among the permutations far enough
/// from it.
pub fn max_code_bruteforce(n: usize, dmin: usize) -> Result<PermSet> {
    if n < 1 {
        return Err(Error::Range("codes need n >= 1".into()));
    }
    if n > MAX_CODE_MAX_ORDER {
        return Err(Error::TooLarge {
            engine: "max-code",
            order: n,
            cap: MAX_CODE_MAX_ORDER,
        });
    }
    let all = Permutation::all(n);
    let id = Permutation::identity(n);
    let far = |a: &Permutation, b: &Permutation| a.0.iter().zip(&b.0).any(|(&x, &y)| x.abs_diff(y) as usize >= dmin);
    let candidates: Vec<&Permutation> = all.iter().filter(|p| **p != id && far(p, &id)).collect();
    let adjacency: Vec<u128> = candidates
        .iter()
        .map(|p| {
            candidates
                .iter()
                .enumerate()
                .filter(|(_, q)| far(p, q))
                .fold(0u128, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    let clique = max_clique_with(&adjacency);
    let mut members: Vec<Permutation> = clique.into_iter().map(|k| candidates[k].clone()).collect();
    members.push(id);
    PermSet::new(n, members)
}
