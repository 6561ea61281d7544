use crate::scalar_series::{LaurentSeries, PolyCoeff, Rational};

use super::algebra::{
    augmentation, bracket, component, derivative, grading, grading_power, inverse_grading, unipotent_inverse,
    LoopAlgebra,
};
use super::ConnectionError;

/// A `G_m`-invariant connection `ω = u^Y(a) dz + u^Y(b) du/u` on the
/// punctured disk times `G_m`.
#[derive(Clone, Debug)]
pub struct InvariantConnection<T> {
    pub a: T,
    pub b: T,
}

impl<T: LoopAlgebra> InvariantConnection<T> {
    pub fn new(a: T, b: T) -> Self {
        InvariantConnection { a, b }
    }

    /// The connection `D(γ) = γ⁻¹dγ` of the equivariant loop `u^Y(γ(z))`.
    pub fn of_loop(gamma: &T) -> Self {
        let inv = unipotent_inverse(gamma);
        InvariantConnection { a: inv.mul(&derivative(gamma)), b: inv.mul(&grading(gamma)) }
    }

    /// The connection of `γ(z) = Te^{−(1/z) ∫_0^1 u^Y(β) du/u}`; `β` must have
    /// constant coefficients.
    pub fn from_beta(beta: &T) -> Self {
        InvariantConnection::of_loop(&beta_loop(beta))
    }

    /// `∂_z b − Y(a) + [a, b]`, the `dz ∧ du/u` part of the curvature.
    pub fn flatness_residual(&self) -> T {
        derivative(&self.b).sub(&grading(&self.a)).add(&bracket(&self.a, &self.b))
    }

    pub fn is_flat(&self) -> bool {
        self.flatness_residual().is_zero()
    }

    /// The `G_m`-equivariant solution `u^Y(γ)` of `D f = ω` with constant
    /// term 1, determined by `Y(γ) = γ b` degree by degree.
    pub fn canonical_solution(&self) -> T {
        let one = self.b.one_like();
        let mut gamma = one.clone();
        for _ in 0..self.b.degree_bound() {
            gamma = one.add(&inverse_grading(&augmentation(&gamma.mul(&self.b))));
        }
        gamma
    }

    /// `ω ↦ h⁻¹dh + h⁻¹ω h` for an equivariant gauge `u^Y(h(z))`.
    pub fn gauge_act(&self, h: &T) -> Self {
        let inv = unipotent_inverse(h);
        InvariantConnection {
            a: inv.mul(&derivative(h)).add(&inv.mul(&self.a).mul(h)),
            b: inv.mul(&grading(h)).add(&inv.mul(&self.b).mul(h)),
        }
    }

    pub fn agrees(&self, other: &Self) -> bool {
        self.a.agrees(&other.a) && self.b.agrees(&other.b)
    }
}

/// `Te^{−(1/z) ∫_0^1 u^Y(β) du/u}`: the degree sequence `(n1,…,nm)` carries
/// `(−1/z)^m / (n1 (n1+n2) ⋯ (n1+⋯+nm))`.
pub fn beta_loop<T: LoopAlgebra>(beta: &T) -> T {
    let bound = beta.degree_bound();
    let comps: Vec<(u32, T)> = (1..=bound).map(|n| (n, component(beta, n))).filter(|(_, c)| !c.is_zero()).collect();
    let mut out = beta.one_like();
    let mut stack = vec![(beta.one_like(), Rational::from_integer(1.into()), 0i32, 0u32)];
    while let Some((prod, weight, m, deg)) = stack.pop() {
        for (n, c) in &comps {
            let d = deg + n;
            if d > bound {
                continue;
            }
            let prod2 = prod.mul(c);
            if prod2.is_zero() {
                continue;
            }
            let w2 = -(weight.clone() / Rational::from_integer(d.into()));
            let factor = LaurentSeries::monomial(PolyCoeff::constant(w2.clone()), -(m + 1));
            out = out.add(&prod2.map_graded(&|_, x| &factor * x));
            stack.push((prod2, w2, m + 1, d));
        }
    }
    out
}

/// A section `z ↦ (z, α(z))` with `α` regular and `α(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    alpha: LaurentSeries,
}

impl Section {
    pub fn new(alpha: LaurentSeries) -> Result<Self, ConnectionError> {
        if alpha.pole_order() > 0 || !alpha.constant_term().as_rational().is_some_and(|c| c == Rational::from_integer(1.into())) {
            return Err(ConnectionError::BadSection(alpha.to_string()));
        }
        Ok(Section { alpha })
    }

    pub fn constant() -> Self {
        Section { alpha: LaurentSeries::one() }
    }

    /// `α = e^{sz}`, known modulo `z^{cap+1}`.
    pub fn exponential(s: &PolyCoeff, cap: i32) -> Self {
        let alpha = LaurentSeries::monomial(s.clone(), 1).exp(cap).expect("sz vanishes at z = 0");
        Section { alpha }
    }

    pub fn alpha(&self) -> &LaurentSeries {
        &self.alpha
    }

    /// `α'(0)`.
    pub fn slope(&self) -> PolyCoeff {
        self.alpha.coeff(1)
    }

    /// `α^0, …, α^n`.
    pub fn powers(&self, n: u32) -> Vec<LaurentSeries> {
        let mut out = vec![LaurentSeries::one()];
        for k in 1..=n as usize {
            out.push(&out[k - 1] * &self.alpha);
        }
        out
    }

    /// `α'/α` modulo `z^{cap+1}`.
    pub fn log_derivative(&self, cap: i32) -> LaurentSeries {
        let inv = self.alpha.invert(cap).expect("α(0) = 1");
        &self.alpha.derivative() * &inv
    }

    /// `α^Y(x)`.
    pub fn apply<T: LoopAlgebra>(&self, x: &T) -> T {
        grading_power(x, &self.powers(x.degree_bound()))
    }
}

/// The pullback `σ*ω = (α^Y(a) + α^Y(b) α'/α) dz`.
pub fn restrict_to_section<T: LoopAlgebra>(omega: &InvariantConnection<T>, sigma: &Section, cap: i32) -> T {
    let ld = sigma.log_derivative(cap);
    sigma.apply(&omega.a).add(&sigma.apply(&omega.b).map_graded(&|_, c| c * &ld))
}

/// A nonzero residue met while integrating `f' = f A` at the given degree.
#[derive(Clone, Debug)]
pub struct Obstruction<T> {
    pub degree: u32,
    pub residue: T,
}

/// Solves `f⁻¹ f' = A` degree by degree. Each layer is integrated with zero
/// `z⁰` coefficient, so `f` equals 1 at the formal base point; a `z⁻¹` term
/// in a layer means nontrivial monodromy.
pub fn solve_df<T: LoopAlgebra>(a: &T) -> Result<T, Obstruction<T>> {
    let mut f = a.one_like();
    for n in 1..=a.degree_bound() {
        let r = component(&f.mul(a), n);
        let residue = r.map_graded(&|_, c| LaurentSeries::constant(c.coeff(-1)));
        if !residue.is_zero() {
            return Err(Obstruction { degree: n, residue });
        }
        f = f.add(&r.map_graded(&|_, c| c.antiderivative().expect("residue checked")));
    }
    Ok(f)
}

/// `D f = f⁻¹ f'`.
pub fn log_derivative<T: LoopAlgebra>(f: &T) -> T {
    unipotent_inverse(f).mul(&derivative(f))
}

pub fn is_regular<T: LoopAlgebra>(x: &T) -> bool {
    x.coefficients().iter().all(|(_, c)| c.pole_order() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansional::{time_ordered_exp, Bound, GradedKernel};
    use crate::free_graded::{NCSeries, Word};
    use crate::scalar_series::{int, rat, Symbol};

    type S = NCSeries<LaurentSeries>;

    fn e(k: u32) -> NCSeries<Rational> {
        NCSeries::generator(4, k)
    }

    fn sample_beta() -> NCSeries<Rational> {
        &(&e(1) + &e(2).scale_rational(&rat(-1, 2))) + &e(1).bracket(&e(2)).scale_rational(&int(3))
    }

    #[test]
    fn single_generator_example() {
        let omega = InvariantConnection::from_beta(&NCSeries::<Rational>::generator(4, 2).to_laurent());
        let w = Word::letter(2);
        assert_eq!(omega.a.coeff(&w), LaurentSeries::z_pow(-2).scale(&rat(1, 2)));
        assert_eq!(omega.b.coeff(&w), LaurentSeries::z_pow(-1).scale(&int(-1)));
        assert!(omega.is_flat());
    }

    #[test]
    fn beta_loop_is_power_flow_expansional() {
        let beta = sample_beta();
        let k = GradedKernel::power(beta.clone(), -&LaurentSeries::z_pow(-1));
        let te = time_ordered_exp(&k, &Bound::zero(), &Bound::rational(int(1)), 0).unwrap();
        assert_eq!(beta_loop(&beta.to_laurent()), te);
    }

    #[test]
    fn from_beta_is_flat_and_canonical() {
        let omega = InvariantConnection::from_beta(&sample_beta().to_laurent());
        assert!(omega.is_flat());
        assert!(omega.a.is_lie() && omega.b.is_lie());
        assert_eq!(omega.canonical_solution(), beta_loop(&sample_beta().to_laurent()));
        let bent = InvariantConnection::new(&omega.a + &S::generator(4, 1), omega.b.clone());
        assert!(!bent.is_flat());
    }

    #[test]
    fn gauge_keeps_flatness() {
        let omega = InvariantConnection::from_beta(&sample_beta().to_laurent());
        let h = (&S::generator(4, 1).scale(&LaurentSeries::from_terms([(0, PolyCoeff::one()), (2, PolyCoeff::one())]))
            + &S::generator(4, 3).scale(&LaurentSeries::z_pow(1)))
            .exp()
            .unwrap();
        let moved = omega.gauge_act(&h);
        assert!(moved.is_flat());
        assert!(moved.canonical_solution().agrees(&omega.canonical_solution().concat_mul(&h)));
        let back = moved.gauge_act(&h.inverse().unwrap());
        assert!(back.agrees(&omega));
    }

    #[test]
    fn restrictions_are_solvable() {
        let omega = InvariantConnection::from_beta(&sample_beta().to_laurent());
        let s = PolyCoeff::symbol(Symbol::S);
        for sigma in [
            Section::constant(),
            Section::new(LaurentSeries::from_terms([(0, PolyCoeff::one()), (1, s.clone())])).unwrap(),
            Section::exponential(&PolyCoeff::constant(int(2)), 12),
        ] {
            let a = restrict_to_section(&omega, &sigma, 12);
            let f = solve_df(&a).unwrap();
            assert!(log_derivative(&f).agrees(&a));
            let g = sigma.apply(&omega.canonical_solution());
            assert!(log_derivative(&g).agrees(&a));
        }
    }

    #[test]
    fn residue_obstructs() {
        let a = S::generator(4, 3).scale(&LaurentSeries::z_pow(-1).scale(&rat(5, 2)));
        let err = solve_df(&a).unwrap_err();
        assert_eq!(err.degree, 3);
        assert_eq!(err.residue, S::generator(4, 3).scale(&LaurentSeries::rational(rat(5, 2))));
        let a = S::generator(4, 1).scale(&LaurentSeries::z_pow(-2));
        assert!(solve_df(&a).is_ok());
    }

    #[test]
    fn bad_sections() {
        assert!(Section::new(LaurentSeries::rational(int(2))).is_err());
        assert!(Section::new(&LaurentSeries::one() + &LaurentSeries::z_pow(-1)).is_err());
        assert_eq!(Section::exponential(&PolyCoeff::one(), 5).slope(), PolyCoeff::one());
    }
}
