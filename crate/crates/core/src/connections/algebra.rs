use std::fmt;

use crate::free_graded::NCSeries;
use crate::scalar_series::{LaurentSeries, Rational};

/// A graded algebra with Laurent series coefficients in which connections,
/// loops and their Birkhoff parts live: the completed enveloping algebra of
/// the free graded Lie algebra, or unipotent matrices over a graded space.
///
/// Every coefficient carries a nonnegative degree, the product adds degrees,
/// and everything above `degree_bound` vanishes.
pub trait LoopAlgebra: Clone + fmt::Debug {
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    /// Applies `f(degree, coefficient)` to every coefficient.
    fn map_graded(&self, f: &dyn Fn(u32, &LaurentSeries) -> LaurentSeries) -> Self;

    /// Every `(degree, coefficient)` that may be nonzero.
    fn coefficients(&self) -> Vec<(u32, LaurentSeries)>;

    fn degree_bound(&self) -> u32;

    fn agrees(&self, other: &Self) -> bool;

    fn neg(&self) -> Self {
        self.zero_like().sub(self)
    }

    fn is_zero(&self) -> bool {
        self.coefficients().iter().all(|(_, c)| c.agrees_with(&LaurentSeries::zero()))
    }
}

impl LoopAlgebra for NCSeries<LaurentSeries> {
    fn one_like(&self) -> Self {
        NCSeries::one(self.trunc())
    }
    fn zero_like(&self) -> Self {
        NCSeries::zero(self.trunc())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self.concat_mul(other)
    }
    fn map_graded(&self, f: &dyn Fn(u32, &LaurentSeries) -> LaurentSeries) -> Self {
        self.map_terms(|w, c| f(w.degree(), c))
    }
    fn coefficients(&self) -> Vec<(u32, LaurentSeries)> {
        self.terms().map(|(w, c)| (w.degree(), c.clone())).collect()
    }
    fn degree_bound(&self) -> u32 {
        self.trunc()
    }
    fn agrees(&self, other: &Self) -> bool {
        NCSeries::agrees(self, other)
    }
}

/// Square matrix over Laurent series acting on a graded space; entry
/// `(i, j)` has degree `deg_i − deg_j` and must vanish when that is negative.
#[derive(Clone, PartialEq)]
pub struct LaurentMatrix {
    degs: Vec<i32>,
    entries: Vec<Vec<LaurentSeries>>,
}

impl LaurentMatrix {
    pub fn zero(degs: Vec<i32>) -> Self {
        let n = degs.len();
        LaurentMatrix { degs, entries: vec![vec![LaurentSeries::zero(); n]; n] }
    }

    pub fn identity(degs: Vec<i32>) -> Self {
        let mut m = LaurentMatrix::zero(degs);
        for i in 0..m.dim() {
            m.entries[i][i] = LaurentSeries::one();
        }
        m
    }

    /// Lifts a rational matrix; entries of negative degree must be zero.
    pub fn from_rational(degs: Vec<i32>, rows: &[Vec<Rational>]) -> Option<Self> {
        let mut m = LaurentMatrix::zero(degs);
        for (i, row) in rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if *c != Rational::default() {
                    if m.degs[i] < m.degs[j] {
                        return None;
                    }
                    m.entries[i][j] = LaurentSeries::rational(c.clone());
                }
            }
        }
        Some(m)
    }

    pub fn dim(&self) -> usize {
        self.degs.len()
    }

    pub fn degs(&self) -> &[i32] {
        &self.degs
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentSeries {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentSeries) {
        self.entries[i][j] = v;
    }

    fn zip(&self, other: &Self, f: impl Fn(&LaurentSeries, &LaurentSeries) -> LaurentSeries) -> Self {
        assert_eq!(self.degs, other.degs, "matrices over different graded spaces");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| f(x, y)).collect())
            .collect();
        LaurentMatrix { degs: self.degs.clone(), entries }
    }
}

impl LoopAlgebra for LaurentMatrix {
    fn one_like(&self) -> Self {
        LaurentMatrix::identity(self.degs.clone())
    }
    fn zero_like(&self) -> Self {
        LaurentMatrix::zero(self.degs.clone())
    }
    fn add(&self, other: &Self) -> Self {
        self.zip(other, |x, y| x + y)
    }
    fn sub(&self, other: &Self) -> Self {
        self.zip(other, |x, y| x - y)
    }
    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.degs, other.degs, "matrices over different graded spaces");
        let n = self.dim();
        let mut out = LaurentMatrix::zero(self.degs.clone());
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        out.entries[i][j] = &out.entries[i][j] + &(a * b);
                    }
                }
            }
        }
        out
    }
    fn map_graded(&self, f: &dyn Fn(u32, &LaurentSeries) -> LaurentSeries) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let d = self.degs[i] - self.degs[j];
                if d >= 0 {
                    out.entries[i][j] = f(d as u32, &self.entries[i][j]);
                }
            }
        }
        out
    }
    fn coefficients(&self) -> Vec<(u32, LaurentSeries)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let d = self.degs[i] - self.degs[j];
                if d >= 0 {
                    out.push((d as u32, self.entries[i][j].clone()));
                }
            }
        }
        out
    }
    fn degree_bound(&self) -> u32 {
        match (self.degs.iter().max(), self.degs.iter().min()) {
            (Some(hi), Some(lo)) => (hi - lo) as u32,
            _ => 0,
        }
    }
    fn agrees(&self, other: &Self) -> bool {
        self.degs == other.degs
            && self.entries.iter().flatten().zip(other.entries.iter().flatten()).all(|(x, y)| x.agrees_with(y))
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LaurentMatrix(degs {:?})", self.degs)?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// The degree-`n` component.
pub fn component<T: LoopAlgebra>(x: &T, n: u32) -> T {
    x.map_graded(&|d, c| if d == n { c.clone() } else { LaurentSeries::zero() })
}

/// Everything of positive degree.
pub fn augmentation<T: LoopAlgebra>(x: &T) -> T {
    x.map_graded(&|d, c| if d > 0 { c.clone() } else { LaurentSeries::zero() })
}

/// The grading derivation `Y`.
pub fn grading<T: LoopAlgebra>(x: &T) -> T {
    x.map_graded(&|d, c| c.scale(&Rational::from_integer(d.into())))
}

/// `Y⁻¹` on positive degrees; degree zero is dropped.
pub fn inverse_grading<T: LoopAlgebra>(x: &T) -> T {
    x.map_graded(&|d, c| if d == 0 { LaurentSeries::zero() } else { c.scale(&Rational::new(1.into(), d.into())) })
}

/// `α^Y`: degree `n` multiplied by `α^n`.
pub fn grading_power<T: LoopAlgebra>(x: &T, alpha_powers: &[LaurentSeries]) -> T {
    x.map_graded(&|d, c| &alpha_powers[d as usize] * c)
}

pub fn derivative<T: LoopAlgebra>(x: &T) -> T {
    x.map_graded(&|_, c| c.derivative())
}

pub fn pole_part<T: LoopAlgebra>(x: &T) -> T {
    x.map_graded(&|_, c| c.pole_part())
}

pub fn bracket<T: LoopAlgebra>(x: &T, y: &T) -> T {
    x.mul(y).sub(&y.mul(x))
}

/// Inverse of `1 + n` with `n` of positive degree, by nilpotency.
pub fn unipotent_inverse<T: LoopAlgebra>(x: &T) -> T {
    let minus_n = augmentation(x).neg();
    let mut out = x.one_like();
    let mut power = x.one_like();
    for _ in 0..x.degree_bound() {
        power = power.mul(&minus_n);
        out = out.add(&power);
    }
    out
}

/// `log(1 + n)` with `n` of positive degree.
pub fn unipotent_log<T: LoopAlgebra>(x: &T) -> T {
    let n = augmentation(x);
    let mut out = x.zero_like();
    let mut power = x.one_like();
    for k in 1..=x.degree_bound() {
        power = power.mul(&n);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out = out.add(&power.map_graded(&|_, c| c.scale(&Rational::new(sign.into(), k.into()))));
    }
    out
}

/// `exp(n)` for `n` of positive degree.
pub fn nilpotent_exp<T: LoopAlgebra>(x: &T) -> T {
    let n = augmentation(x);
    let mut out = x.one_like();
    let mut term = x.one_like();
    for k in 1..=x.degree_bound() {
        term = term.mul(&n).map_graded(&|_, c| c.scale(&Rational::new(1.into(), k.into())));
        out = out.add(&term);
    }
    out
}

/// Birkhoff decomposition `g = g₋⁻¹ g₊` degree by degree: at degree `n`
/// the pole part of `(g₋ g)_n` is subtracted from `g₋`.
pub fn birkhoff_layered<T: LoopAlgebra>(g: &T) -> (T, T) {
    let mut minus = g.one_like();
    for n in 1..=g.degree_bound() {
        let x = component(&minus.mul(g), n);
        minus = minus.sub(&pole_part(&x));
    }
    let plus = minus.mul(g);
    (minus, plus)
}

/// Value at `z = 0` of a regular element, as constant series.
pub fn value_at_zero<T: LoopAlgebra>(x: &T) -> T {
    x.map_graded(&|_, c| LaurentSeries::constant(c.constant_term()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_graded::birkhoff_series;
    use crate::scalar_series::{int, rat, PolyCoeff};

    fn laurent(terms: &[(i32, i64)]) -> LaurentSeries {
        LaurentSeries::from_terms(terms.iter().map(|&(k, n)| (k, PolyCoeff::constant(int(n)))))
    }

    #[test]
    fn layered_birkhoff_matches_word_recursion() {
        let e = |k| NCSeries::<LaurentSeries>::generator(4, k);
        let x = &(&e(1).scale(&laurent(&[(-1, 2), (0, 1)])) + &e(2).scale(&laurent(&[(-2, 1), (1, 3)])))
            + &e(1).bracket(&e(2)).scale(&laurent(&[(-1, -1), (0, 2)]));
        let g = x.exp().unwrap();
        let (m1, p1) = birkhoff_layered(&g);
        let (m2, p2) = birkhoff_series(&g);
        assert_eq!(m1, m2);
        assert_eq!(p1, p2);
    }

    #[test]
    fn matrix_unipotent_helpers() {
        let degs = vec![0, 1, 2];
        let n = LaurentMatrix::from_rational(
            degs.clone(),
            &[vec![int(0), int(0), int(0)], vec![int(1), int(0), int(0)], vec![rat(1, 2), int(3), int(0)]],
        )
        .unwrap();
        let n = n.map_graded(&|_, c| c * &LaurentSeries::z_pow(-1));
        let g = nilpotent_exp(&n);
        assert!(unipotent_log(&g).agrees(&n));
        assert!(g.mul(&unipotent_inverse(&g)).agrees(&g.one_like()));
        let (minus, plus) = birkhoff_layered(&g);
        assert!(unipotent_inverse(&minus).mul(&plus).agrees(&g));
        assert!(plus.agrees(&plus.one_like()));
        assert!(LaurentMatrix::from_rational(degs, &[vec![int(0), int(1), int(0)]]).is_none());
    }
}
