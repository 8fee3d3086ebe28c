//! 7×7 matrices over a generic scalar, the unipotent exponential and
//! logarithm, and structural zero patterns.

use std::array;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::Zero;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::ring::rat;
use crate::scalar::Scalar;

pub const N: usize = 7;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat7<S> {
    e: [[S; N]; N],
}

impl<S: Scalar> Mat7<S> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> S) -> Self {
        Mat7 {
            e: array::from_fn(|i| array::from_fn(|j| f(i, j))),
        }
    }

    pub fn from_rows(e: [[S; N]; N]) -> Self {
        Mat7 { e }
    }

    /// Builds a matrix from small integers; handy for permutation-like data.
    pub fn from_i64(rows: [[i64; N]; N]) -> Self {
        Self::from_fn(|i, j| S::from_i64(rows[i][j]))
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| S::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn diag(d: [S; N]) -> Self {
        let mut m = Self::zero();
        for (i, x) in d.into_iter().enumerate() {
            m.e[i][i] = x;
        }
        m
    }

    pub fn rows(&self) -> &[[S; N]; N] {
        &self.e
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.e[j][i].clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_fn(|i, j| self.e[i][j].clone() * c.clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat7<T> {
        Mat7::from_fn(|i, j| f(&self.e[i][j]))
    }

    pub fn try_map<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<Mat7<T>> {
        let mut out = Mat7::<T>::zero();
        for i in 0..N {
            for j in 0..N {
                out.e[i][j] = f(&self.e[i][j])?;
            }
        }
        Ok(out)
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(N as u32).is_zero()
    }

    pub fn det(&self) -> S {
        Minors::new(self).det()
    }

    /// Transpose of the cofactor matrix.
    pub fn adjugate(&self) -> Self {
        let minors = Minors::new(self);
        Self::from_fn(|i, j| {
            let m = minors.minor(j, i);
            if (i + j) % 2 == 0 {
                m
            } else {
                -m
            }
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        let minors = Minors::new(self);
        let d = minors.det();
        let dinv = d.try_inv().ok_or(Error::Singular)?;
        Ok(Self::from_fn(|i, j| {
            let m = minors.minor(j, i) * dinv.clone();
            if (i + j) % 2 == 0 {
                m
            } else {
                -m
            }
        }))
    }

    /// `Σ_{k<7} X^k / k!`, after checking `X^7 = 0`.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        let powers = self.powers()?;
        let mut acc = Self::identity();
        let mut fact = 1i64;
        for (k, p) in powers.iter().enumerate().skip(1) {
            fact *= k as i64;
            acc = &acc + &p.scale(&S::from_rat(&rat(1, fact)));
        }
        Ok(acc)
    }

    /// `Σ_{k<7} (-1)^{k+1} (U - I)^k / k`, after checking `(U - I)^7 = 0`.
    pub fn log_unipotent(&self) -> Result<Self> {
        let n = self - &Self::identity();
        let powers = n.powers().map_err(|_| Error::NotUnipotent)?;
        let mut acc = Self::zero();
        for (k, p) in powers.iter().enumerate().skip(1) {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = &acc + &p.scale(&S::from_rat(&rat(sign, k as i64)));
        }
        Ok(acc)
    }

    /// `[X^0, ..., X^6]`, or `NotNilpotent` when `X^7 != 0`.
    fn powers(&self) -> Result<Vec<Self>> {
        let mut out = vec![Self::identity()];
        for k in 1..=N {
            let next = &out[k - 1] * self;
            if k == N {
                if !next.is_zero() {
                    return Err(Error::NotNilpotent);
                }
            } else {
                out.push(next);
            }
        }
        Ok(out)
    }

    /// Exactly one nonzero entry in every row and every column.
    pub fn is_monomial(&self) -> bool {
        let row_ok = (0..N).all(|i| (0..N).filter(|&j| !self.e[i][j].is_zero()).count() == 1);
        let col_ok = (0..N).all(|j| (0..N).filter(|&i| !self.e[i][j].is_zero()).count() == 1);
        row_ok && col_ok
    }

    pub fn is_diagonal(&self) -> bool {
        (0..N).all(|i| (0..N).all(|j| i == j || self.e[i][j].is_zero()))
    }

    pub fn diagonal(&self) -> [S; N] {
        array::from_fn(|i| self.e[i][i].clone())
    }

    /// `g X g⁻¹`.
    pub fn conjugate_by(&self, g: &Self) -> Result<Self> {
        Ok(&(g * self) * &g.inverse()?)
    }
}

/// Every `k×k` leading and trailing minor of a 7×7 matrix, indexed by column
/// subsets. One table answers the determinant and all 49 cofactors with
/// division-free arithmetic, which keeps rational-function entries small.
struct Minors<S> {
    /// `head[S]`: det of rows `0..|S|`, columns `S`.
    head: Vec<S>,
    /// `tail[T]`: det of rows `7-|T|..7`, columns `T`.
    tail: Vec<S>,
}

impl<S: Scalar> Minors<S> {
    fn new(m: &Mat7<S>) -> Self {
        let full = 1usize << N;
        let mut head = vec![S::zero(); full];
        let mut tail = vec![S::zero(); full];
        head[0] = S::one();
        tail[0] = S::one();
        let mut by_size: Vec<usize> = (1..full).collect();
        by_size.sort_by_key(|s| s.count_ones());
        for &set in &by_size {
            let k = set.count_ones() as usize;
            // head: expand along its last row k-1
            let r = k - 1;
            let mut acc = S::zero();
            for (idx, c) in bits(set).enumerate() {
                let a = &m.e[r][c];
                let sub = &head[set & !(1 << c)];
                if a.is_zero() || sub.is_zero() {
                    continue;
                }
                let term = a.clone() * sub.clone();
                acc = if (r + idx).is_multiple_of(2) {
                    acc + term
                } else {
                    acc - term
                };
            }
            head[set] = acc;
            // tail: expand along its first row 7-k
            let r = N - k;
            let mut acc = S::zero();
            for (idx, c) in bits(set).enumerate() {
                let a = &m.e[r][c];
                let sub = &tail[set & !(1 << c)];
                if a.is_zero() || sub.is_zero() {
                    continue;
                }
                let term = a.clone() * sub.clone();
                acc = if idx % 2 == 0 { acc + term } else { acc - term };
            }
            tail[set] = acc;
        }
        Minors { head, tail }
    }

    fn det(&self) -> S {
        self.head[(1 << N) - 1].clone()
    }

    /// Determinant of the matrix with row `i` and column `j` deleted, by the
    /// generalized Laplace expansion along rows `0..i`.
    fn minor(&self, i: usize, j: usize) -> S {
        let cols = ((1usize << N) - 1) & !(1 << j);
        let mut acc = S::zero();
        for s in subsets_of_size(cols, i) {
            let h = &self.head[s];
            let t = &self.tail[cols & !s];
            if h.is_zero() || t.is_zero() {
                continue;
            }
            // positions of s inside the reindexed 6 columns
            let pos: usize = bits(s).map(|c| if c < j { c } else { c - 1 }).sum();
            let rows: usize = (0..i).sum();
            let term = h.clone() * t.clone();
            acc = if (pos + rows).is_multiple_of(2) {
                acc + term
            } else {
                acc - term
            };
        }
        acc
    }
}

fn bits(set: usize) -> impl Iterator<Item = usize> {
    (0..N).filter(move |c| set & (1 << c) != 0)
}

fn subsets_of_size(within: usize, k: usize) -> impl Iterator<Item = usize> {
    (0..1usize << N).filter(move |&s| s & !within == 0 && s.count_ones() as usize == k)
}

impl<S> Index<(usize, usize)> for Mat7<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.e[i][j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat7<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.e[i][j]
    }
}

impl<S: Scalar> Mul<&Mat7<S>> for &Mat7<S> {
    type Output = Mat7<S>;
    fn mul(self, rhs: &Mat7<S>) -> Mat7<S> {
        Mat7::from_fn(|i, j| {
            let mut acc = S::zero();
            for k in 0..N {
                let (a, b) = (&self.e[i][k], &rhs.e[k][j]);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a.clone() * b.clone();
                }
            }
            acc
        })
    }
}

impl<S: Scalar> Add<&Mat7<S>> for &Mat7<S> {
    type Output = Mat7<S>;
    fn add(self, rhs: &Mat7<S>) -> Mat7<S> {
        Mat7::from_fn(|i, j| self.e[i][j].clone() + rhs.e[i][j].clone())
    }
}

impl<S: Scalar> Sub<&Mat7<S>> for &Mat7<S> {
    type Output = Mat7<S>;
    fn sub(self, rhs: &Mat7<S>) -> Mat7<S> {
        Mat7::from_fn(|i, j| self.e[i][j].clone() - rhs.e[i][j].clone())
    }
}

impl<S: Scalar> Neg for &Mat7<S> {
    type Output = Mat7<S>;
    fn neg(self) -> Mat7<S> {
        Mat7::from_fn(|i, j| -self.e[i][j].clone())
    }
}

impl<S: Scalar> Mul for Mat7<S> {
    type Output = Mat7<S>;
    fn mul(self, rhs: Mat7<S>) -> Mat7<S> {
        &self * &rhs
    }
}

impl<S: Scalar> Add for Mat7<S> {
    type Output = Mat7<S>;
    fn add(self, rhs: Mat7<S>) -> Mat7<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for Mat7<S> {
    type Output = Mat7<S>;
    fn sub(self, rhs: Mat7<S>) -> Mat7<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Neg for Mat7<S> {
    type Output = Mat7<S>;
    fn neg(self) -> Mat7<S> {
        -&self
    }
}

/// Aligned columns, one row per line.
impl<S: fmt::Display> fmt::Display for Mat7<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .e
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        let widths: Vec<usize> = (0..N)
            .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
            .collect();
        for (i, row) in cells.iter().enumerate() {
            f.write_str("[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str("  ")?;
                }
                write!(f, "{c:>w$}", w = widths[j])?;
            }
            f.write_str("]")?;
            if i + 1 < N {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

/// Row-major array of rows; entries are rendered as strings so exact
/// rationals survive the trip.
impl<S: fmt::Display> Serialize for Mat7<S> {
    fn serialize<Z: Serializer>(&self, ser: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let mut seq = ser.serialize_seq(Some(N))?;
        for row in &self.e {
            let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            seq.serialize_element(&r)?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Zero,
    Free,
    One,
}

/// A structural predicate on matrix entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroPattern {
    pub mask: [[Cell; N]; N],
}

impl ZeroPattern {
    /// Rows written with `*` (free), `0` and `1`, whitespace ignored.
    pub fn parse(rows: [&str; N]) -> Result<Self> {
        let mut mask = [[Cell::Free; N]; N];
        for (i, r) in rows.iter().enumerate() {
            let cells: Vec<char> = r.chars().filter(|c| !c.is_whitespace()).collect();
            if cells.len() != N {
                return Err(Error::Config(format!(
                    "pattern row {} has {} cells",
                    i + 1,
                    cells.len()
                )));
            }
            for (j, c) in cells.into_iter().enumerate() {
                mask[i][j] = match c {
                    '*' => Cell::Free,
                    '0' => Cell::Zero,
                    '1' => Cell::One,
                    other => return Err(Error::Config(format!("bad pattern cell `{other}`"))),
                };
            }
        }
        Ok(ZeroPattern { mask })
    }

    /// The support of `embed_M(A) · exp(n)` for `A ∈ GL2`, `n ∈ Lie(N)`.
    pub fn parabolic() -> Self {
        Self::parse(PARABOLIC_ROWS).expect("static pattern")
    }

    /// `(row, col)` (0-based) of every violated cell.
    pub fn violations<S: Scalar>(&self, a: &Mat7<S>) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..N {
            for j in 0..N {
                let ok = match self.mask[i][j] {
                    Cell::Free => true,
                    Cell::Zero => a[(i, j)].is_zero(),
                    Cell::One => a[(i, j)] == S::one(),
                };
                if !ok {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Cells where two patterns disagree.
    pub fn diff(&self, other: &ZeroPattern) -> Vec<(usize, usize, Cell, Cell)> {
        let mut out = Vec::new();
        for i in 0..N {
            for j in 0..N {
                if self.mask[i][j] != other.mask[i][j] {
                    out.push((i, j, self.mask[i][j], other.mask[i][j]));
                }
            }
        }
        out
    }
}

pub const PARABOLIC_ROWS: [&str; N] = [
    "*****0*", "*****0*", "00*0000", "00***00", "00***00", "*******", "00***01",
];

pub fn matches_pattern<S: Scalar>(a: &Mat7<S>, p: &ZeroPattern) -> bool {
    p.violations(a).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, Rat, RatFn, Symbol};
    use proptest::prelude::*;

    type M = Mat7<Rat>;

    fn upper_unipotent(vals: &[i64]) -> M {
        let mut k = 0;
        M::from_fn(|i, j| {
            if i == j {
                int(1)
            } else if i < j {
                k += 1;
                int(vals[(k - 1) % vals.len()])
            } else {
                int(0)
            }
        })
    }

    fn strictly_upper(vals: &[i64]) -> M {
        &upper_unipotent(vals) - &M::identity()
    }

    #[test]
    fn identity_laws() {
        let a = upper_unipotent(&[1, -2, 3]);
        assert_eq!(&a * &M::identity(), a);
        assert_eq!(M::identity().inverse().unwrap(), M::identity());
        assert_eq!(M::zero().exp_nilpotent().unwrap(), M::identity());
        assert_eq!(M::identity().log_unipotent().unwrap(), M::zero());
    }

    #[test]
    fn det_of_permutation_and_diagonal() {
        let d = M::diag([int(1), int(2), int(3), int(4), int(5), int(6), int(7)]);
        assert_eq!(d.det(), int(5040));
        let mut p = M::zero();
        for i in 0..N {
            p[(i, (i + 1) % N)] = int(1);
        }
        // a 7-cycle is even
        assert_eq!(p.det(), int(1));
        assert_eq!(M::zero().det(), int(0));
    }

    #[test]
    fn inverse_of_unipotent_multiplies_back() {
        let a = upper_unipotent(&[3, -1, 4, 1, -5, 9, 2, -6]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert!((&inv * &a).is_identity());
    }

    #[test]
    fn singular_rejected() {
        let mut a = M::identity();
        a[(3, 3)] = int(0);
        assert_eq!(a.inverse(), Err(Error::Singular));
    }

    #[test]
    fn exp_requires_nilpotent() {
        assert_eq!(M::identity().exp_nilpotent(), Err(Error::NotNilpotent));
        assert_eq!(M::zero().log_unipotent(), Err(Error::NotUnipotent));
    }

    #[test]
    fn symbolic_inverse() {
        let t = RatFn::var(Symbol::T);
        let mut a = Mat7::<RatFn>::identity();
        a[(0, 0)] = t.clone();
        a[(0, 3)] = RatFn::var(Symbol::X);
        a[(5, 2)] = t.clone();
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(a.det(), t);
    }

    #[test]
    fn patterns() {
        let p = ZeroPattern::parabolic();
        assert!(matches_pattern(&M::identity(), &p));
        let mut a = M::identity();
        a[(6, 6)] = int(2);
        assert_eq!(p.violations(&a), vec![(6, 6)]);
        assert!(ZeroPattern::parse(["*"; N]).is_err());
    }

    #[test]
    fn display_aligns_columns() {
        let mut a = M::identity();
        a[(0, 1)] = rat(-3, 4);
        let s = a.to_string();
        let first = s.lines().next().unwrap();
        assert!(first.starts_with("[1  -3/4  0"));
        assert_eq!(s.lines().count(), 7);
        let json = serde_json::to_string(&M::identity()).unwrap();
        assert!(json.starts_with("[[\"1\",\"0\""));
    }

    fn nilpotent() -> impl Strategy<Value = M> {
        prop::collection::vec(-5i64..=5, 21).prop_map(|v| strictly_upper(&v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn exp_log_round_trip(x in nilpotent()) {
            let u = x.exp_nilpotent().unwrap();
            prop_assert_eq!(u.log_unipotent().unwrap(), x.clone());
            let back = (-&x).exp_nilpotent().unwrap();
            prop_assert!((&u * &back).is_identity());
        }

        #[test]
        fn exp_is_conjugation_equivariant(x in nilpotent(), d in prop::collection::vec(1i64..=4, 7)) {
            let z = M::diag(array::from_fn(|i| int(d[i])));
            let lhs = x.conjugate_by(&z).unwrap().exp_nilpotent().unwrap();
            let rhs = x.exp_nilpotent().unwrap().conjugate_by(&z).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn adjugate_identity(v in prop::collection::vec(-3i64..=3, 49)) {
            let a = M::from_fn(|i, j| int(v[i * N + j]));
            let prod = &a * &a.adjugate();
            prop_assert_eq!(prod, M::identity().scale(&a.det()));
        }
    }
}
