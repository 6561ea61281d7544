use crate::free_graded::NCSeries;
use crate::scalar_series::{LaurentSeries, Rational};

use super::ExpansionalError;

/// How the degree-`n` component of the kernel depends on the flow variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelKind {
    /// `α(t) = θ_{−t}(β)`: degree `n` carries `e^{−nt} dt`.
    ThetaFlow,
    /// `α(u) du/u = u^Y(β) du/u`: degree `n` carries `u^{n−1} du`.
    PowerFlow,
}

/// A graded kernel `scale · Σ_n w_n(s) β_n ds` with `β_n` the degree-`n`
/// component of `beta`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedKernel {
    pub kind: KernelKind,
    pub beta: NCSeries<Rational>,
    /// Prefactor applied once per letter, e.g. `−1/z`.
    pub scale: LaurentSeries,
}

impl GradedKernel {
    pub fn new(kind: KernelKind, beta: NCSeries<Rational>, scale: LaurentSeries) -> Self {
        GradedKernel { kind, beta, scale }
    }

    pub fn theta(beta: NCSeries<Rational>, scale: LaurentSeries) -> Self {
        GradedKernel::new(KernelKind::ThetaFlow, beta, scale)
    }

    pub fn power(beta: NCSeries<Rational>, scale: LaurentSeries) -> Self {
        GradedKernel::new(KernelKind::PowerFlow, beta, scale)
    }

    pub fn trunc(&self) -> u32 {
        self.beta.trunc()
    }

    /// The homogeneous pieces `β_n`, `1 ≤ n ≤ trunc`, skipping zeros.
    pub fn components(&self) -> Vec<(u32, NCSeries<Rational>)> {
        (1..=self.trunc())
            .map(|n| (n, self.beta.homogeneous(n)))
            .filter(|(_, b)| !b.is_zero())
            .collect()
    }
}

/// An integration bound.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    /// The flow variable itself (`t` for theta flows, `u` for power flows).
    /// Theta-flow values must vanish at `z = 0`, like `−zL`, so that `e^{−t}`
    /// expands as a series.
    At(LaurentSeries),
    /// `t = +∞`, theta flows only.
    Infinity,
    /// The theta-flow point with `e^{−t} = x`, for exact rational splits.
    ThetaPoint(Rational),
}

impl Bound {
    pub fn zero() -> Bound {
        Bound::At(LaurentSeries::zero())
    }

    pub fn rational(r: Rational) -> Bound {
        Bound::At(LaurentSeries::rational(r))
    }
}

/// The bound in the integration coordinate: `u` itself for power flows and
/// `x = e^{−t}` for theta flows.
fn coordinate(kind: KernelKind, b: &Bound, z_cap: i32) -> Result<LaurentSeries, ExpansionalError> {
    match (kind, b) {
        (KernelKind::PowerFlow, Bound::At(u)) => Ok(u.clone()),
        (KernelKind::PowerFlow, Bound::Infinity) => Err(ExpansionalError::DivergentBound),
        (KernelKind::PowerFlow, Bound::ThetaPoint(_)) => {
            Err(ExpansionalError::InvalidBound("theta points need a theta-flow kernel".into()))
        }
        (KernelKind::ThetaFlow, Bound::At(t)) => (-t).exp(z_cap).map_err(|_| {
            ExpansionalError::InvalidBound(format!("theta-flow bound {t} must vanish at z = 0"))
        }),
        (KernelKind::ThetaFlow, Bound::Infinity) => Ok(LaurentSeries::zero()),
        (KernelKind::ThetaFlow, Bound::ThetaPoint(x)) => Ok(LaurentSeries::rational(x.clone())),
    }
}

/// Polynomial in the integration coordinate with series coefficients.
type CoordPoly = Vec<LaurentSeries>;

fn powers(x: &LaurentSeries, n: usize) -> Vec<LaurentSeries> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = LaurentSeries::one();
    for _ in 0..=n {
        out.push(acc.clone());
        acc = &acc * x;
    }
    out
}

fn eval(p: &CoordPoly, pw: &[LaurentSeries]) -> LaurentSeries {
    p.iter().zip(pw).fold(LaurentSeries::zero(), |acc, (c, x)| &acc + &(c * x))
}

/// One nesting step: `F_new(u) = ∫_lower^u F(w) · weight_n(w) dw`.
/// Power flows use `w^{n−1}`; theta flows use `−x^{n−1}` after `x = e^{−t}`.
fn integrate_step(kind: KernelKind, f: &CoordPoly, n: u32, lower_pw: &[LaurentSeries]) -> CoordPoly {
    let shift = (n - 1) as usize;
    let mut g: CoordPoly = vec![LaurentSeries::zero(); f.len() + shift + 1];
    for (k, c) in f.iter().enumerate() {
        let e = k + shift + 1;
        let mut v = c.scale(&Rational::new(1.into(), (e as i64).into()));
        if kind == KernelKind::ThetaFlow {
            v = -&v;
        }
        g[e] = v;
    }
    g[0] = -&eval(&g, lower_pw);
    g
}

/// The iterated integral `∫_{lower ≤ s1 ≤ ⋯ ≤ sm ≤ upper} Π w_{n_i}(s_i) ds`
/// for the degree sequence `seq`, without the per-letter scale.
pub fn iterated_integral(
    kind: KernelKind,
    seq: &[u32],
    lower: &Bound,
    upper: &Bound,
    z_cap: i32,
) -> Result<LaurentSeries, ExpansionalError> {
    let total: u32 = seq.iter().sum();
    let lo = powers(&coordinate(kind, lower, z_cap)?, total as usize);
    let hi = powers(&coordinate(kind, upper, z_cap)?, total as usize);
    let mut f: CoordPoly = vec![LaurentSeries::one()];
    for &n in seq {
        f = integrate_step(kind, &f, n, &lo);
    }
    Ok(eval(&f, &hi))
}

/// The expansional `Te^{∫_lower^upper α}`, the solution of `dA = A α` with
/// `A(lower) = 1`, expanded word by word with exact iterated integrals.
pub fn time_ordered_exp(
    kernel: &GradedKernel,
    lower: &Bound,
    upper: &Bound,
    z_cap: i32,
) -> Result<NCSeries<LaurentSeries>, ExpansionalError> {
    let trunc = kernel.trunc();
    let lo = powers(&coordinate(kernel.kind, lower, z_cap)?, trunc as usize);
    let hi = powers(&coordinate(kernel.kind, upper, z_cap)?, trunc as usize);
    let comps = kernel.components();
    let mut out = NCSeries::one(trunc);
    // Depth-first over degree sequences, carrying β_{n1}⋯β_{nj}, F_j and scale^j.
    let mut stack: Vec<(NCSeries<Rational>, CoordPoly, LaurentSeries, u32)> =
        vec![(NCSeries::one(trunc), vec![LaurentSeries::one()], LaurentSeries::one(), 0)];
    while let Some((prod, f, sc, deg)) = stack.pop() {
        for (n, b) in &comps {
            if deg + n > trunc {
                continue;
            }
            let prod2 = prod.concat_mul(b);
            if prod2.is_zero() {
                continue;
            }
            let f2 = integrate_step(kernel.kind, &f, *n, &lo);
            let sc2 = &sc * &kernel.scale;
            let weight = &eval(&f2, &hi) * &sc2;
            out = &out + &prod2.map_coeffs(|r| weight.scale(r));
            stack.push((prod2, f2, sc2, deg + n));
        }
    }
    Ok(out)
}
