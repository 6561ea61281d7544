use crate::free_graded::NCSeries;
use crate::scalar_series::{LaurentSeries, PolyCoeff, Rational};

use super::algebra::{birkhoff_layered, unipotent_log, LoopAlgebra};
use super::connection::{log_derivative, restrict_to_section, solve_df, InvariantConnection, Obstruction, Section};
use super::ConnectionError;

/// Coefficient precision used for section restrictions: enough for exact
/// negative parts of loops up to degree `bound`.
pub fn section_cap(bound: u32) -> i32 {
    2 * bound as i32 + 2
}

fn require_flat<T: LoopAlgebra>(omega: &InvariantConnection<T>) -> Result<T, ConnectionError> {
    if !omega.is_flat() {
        return Err(ConnectionError::NotFlat);
    }
    let gamma = omega.canonical_solution();
    if !log_derivative(&gamma).agrees(&omega.a) {
        return Err(ConnectionError::NotFlat);
    }
    Ok(gamma)
}

fn obstructed<T: LoopAlgebra>(o: Obstruction<T>) -> ConnectionError {
    ConnectionError::Obstructed { degree: o.degree, residue: format!("{:?}", o.residue) }
}

/// The negative part of the equivariant solution of a flat connection on the
/// constant section.
pub fn negative_part<T: LoopAlgebra>(omega: &InvariantConnection<T>) -> Result<T, ConnectionError> {
    let gamma = require_flat(omega)?;
    solve_df(&omega.a).map_err(obstructed)?;
    Ok(birkhoff_layered(&gamma).0)
}

/// Whether the solution loops of two flat connections have the same negative part.
pub fn equivalent_negative_parts<T: LoopAlgebra>(
    first: &InvariantConnection<T>,
    second: &InvariantConnection<T>,
) -> Result<bool, ConnectionError> {
    Ok(negative_part(first)?.agrees(&negative_part(second)?))
}

/// The class `β` of a flat equisingular connection, with
/// `classify_beta(from_beta(β)) = β`: `β_n` is `n` times the residue of the
/// degree-`n` part of `log γ₋`.
pub fn classify_beta<T: LoopAlgebra>(omega: &InvariantConnection<T>) -> Result<T, ConnectionError> {
    let minus = negative_part(omega)?;
    let log = unipotent_log(&minus);
    let beta = log.map_graded(&|d, c| LaurentSeries::constant(c.coeff(-1).scale(&Rational::from_integer(d.into()))));
    if beta.coefficients().iter().any(|(_, c)| c.constant_term().as_rational().is_none() && !c.is_zero()) {
        return Err(ConnectionError::NotEquisingular);
    }
    let expected = birkhoff_layered(&super::beta_loop(&beta)).0;
    if !expected.agrees(&minus) {
        return Err(ConnectionError::NotEquisingular);
    }
    Ok(beta)
}

/// `e^{sz}` for `s ∈ {0, 1, 2}` and `1 + z²`.
pub fn default_sections(cap: i32) -> Vec<Section> {
    let mut out: Vec<Section> =
        (0..3).map(|s| Section::exponential(&PolyCoeff::constant(Rational::from_integer(s.into())), cap)).collect();
    let quad = LaurentSeries::from_terms([(0, PolyCoeff::one()), (2, PolyCoeff::one())]);
    out.push(Section::new(quad).expect("1 + z² is a section"));
    out
}

/// The solution loop of a flat connection on the section `σ`: the
/// restriction `α^Y(γ)` of the equivariant solution.
pub fn section_loop<T: LoopAlgebra>(
    omega: &InvariantConnection<T>,
    sigma: &Section,
    cap: i32,
) -> Result<T, ConnectionError> {
    let gamma = require_flat(omega)?;
    let a = restrict_to_section(omega, sigma, cap);
    solve_df(&a).map_err(obstructed)?;
    let f = sigma.apply(&gamma);
    if !log_derivative(&f).agrees(&a) {
        return Err(ConnectionError::NotFlat);
    }
    Ok(f)
}

/// Whether the negative parts of the solution loops agree on every section.
pub fn equisingularity_check<T: LoopAlgebra>(
    omega: &InvariantConnection<T>,
    sections: &[Section],
    cap: i32,
) -> Result<bool, ConnectionError> {
    let mut first: Option<T> = None;
    for sigma in sections {
        let minus = birkhoff_layered(&section_loop(omega, sigma, cap)?).0;
        match &first {
            None => first = Some(minus),
            Some(m) if !m.agrees(&minus) => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}

/// Regular values `γ₊(0)` on two sections for the connection of `β`,
/// and whether `value₂ = exp(−sβ) value₁` with `s = (σ₂/σ₁)'(0)`.
pub fn section_change_regular_value(
    beta: &NCSeries<Rational>,
    first: &Section,
    second: &Section,
    cap: i32,
) -> Result<(NCSeries<PolyCoeff>, NCSeries<PolyCoeff>, bool), ConnectionError> {
    let omega = InvariantConnection::from_beta(&beta.to_laurent());
    let value = |sigma: &Section| -> Result<NCSeries<PolyCoeff>, ConnectionError> {
        let (_, plus) = birkhoff_layered(&section_loop(&omega, sigma, cap)?);
        Ok(plus.at_zero())
    };
    let v1 = value(first)?;
    let v2 = value(second)?;
    let s = &second.slope() - &first.slope();
    let shift = beta.map_coeffs(|c| PolyCoeff::constant(c.clone())).scale(&(-&s)).exp()?;
    let ok = shift.concat_mul(&v1) == v2;
    Ok((v1, v2, ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansional::gamma_minus_from_beta;
    use crate::scalar_series::{int, rat, Symbol};

    type S = NCSeries<LaurentSeries>;

    fn e(k: u32) -> NCSeries<Rational> {
        NCSeries::generator(4, k)
    }

    fn sample_beta() -> NCSeries<Rational> {
        &(&e(1).scale_rational(&int(2)) + &e(3)) + &e(1).bracket(&e(2)).scale_rational(&rat(-1, 3))
    }

    fn gauge() -> S {
        let c = LaurentSeries::from_terms([(0, PolyCoeff::constant(int(3))), (1, PolyCoeff::one())]);
        (&S::generator(4, 1).scale(&c) + &S::generator(4, 2).scale(&LaurentSeries::z_pow(2))).exp().unwrap()
    }

    #[test]
    fn classify_roundtrip() {
        let beta = sample_beta();
        let omega = InvariantConnection::from_beta(&beta.to_laurent());
        assert_eq!(classify_beta(&omega).unwrap(), beta.to_laurent());
        let moved = omega.gauge_act(&gauge());
        assert_eq!(classify_beta(&moved).unwrap(), beta.to_laurent());
    }

    #[test]
    fn minus_part_matches_theta_flow_with_opposite_beta() {
        let beta = sample_beta();
        let omega = InvariantConnection::from_beta(&beta.to_laurent());
        assert_eq!(negative_part(&omega).unwrap(), gamma_minus_from_beta(&-&beta));
    }

    #[test]
    fn negative_parts_separate_classes() {
        let one = InvariantConnection::from_beta(&e(1).to_laurent());
        let two = InvariantConnection::from_beta(&e(1).scale_rational(&int(2)).to_laurent());
        assert!(!equivalent_negative_parts(&one, &two).unwrap());
        assert!(equivalent_negative_parts(&one, &one.gauge_act(&gauge())).unwrap());
    }

    #[test]
    fn equisingular_connections() {
        let omega = InvariantConnection::from_beta(&sample_beta().to_laurent());
        let cap = section_cap(4);
        assert!(equisingularity_check(&omega, &default_sections(cap), cap).unwrap());
        assert!(equisingularity_check(&omega.gauge_act(&gauge()), &default_sections(cap), cap).unwrap());
    }

    #[test]
    fn mu_dependent_pole_is_not_equisingular() {
        let c = LaurentSeries::monomial(PolyCoeff::symbol(Symbol::L), -2);
        let omega = InvariantConnection::of_loop(&S::generator(4, 1).scale(&c).exp().unwrap());
        assert!(omega.is_flat());
        let cap = section_cap(4);
        assert!(!equisingularity_check(&omega, &default_sections(cap), cap).unwrap());
        assert_eq!(classify_beta(&omega), Err(ConnectionError::NotEquisingular));
    }

    #[test]
    fn non_flat_is_rejected() {
        let omega = InvariantConnection::new(S::generator(4, 1).scale(&LaurentSeries::z_pow(-1)), S::zero(4));
        assert_eq!(classify_beta(&omega), Err(ConnectionError::NotFlat));
        assert_eq!(equisingularity_check(&omega, &[Section::constant()], 6), Err(ConnectionError::NotFlat));
    }

    #[test]
    fn regular_value_under_section_change() {
        let beta = sample_beta();
        let s = PolyCoeff::symbol(Symbol::S);
        let linear = Section::new(LaurentSeries::from_terms([(0, PolyCoeff::one()), (1, s)])).unwrap();
        let quad = Section::new(LaurentSeries::from_terms([(0, PolyCoeff::one()), (2, PolyCoeff::one())])).unwrap();
        let cap = section_cap(4);
        let (v1, v2, ok) = section_change_regular_value(&beta, &Section::constant(), &linear, cap).unwrap();
        assert!(ok);
        assert_eq!(v1, NCSeries::one(4));
        assert_ne!(v2, v1);
        let (v1, v2, ok) = section_change_regular_value(&beta, &Section::constant(), &quad, cap).unwrap();
        assert!(ok);
        assert_eq!(v1, v2);
        let e1 = Section::exponential(&PolyCoeff::one(), cap);
        let (_, _, ok) = section_change_regular_value(&beta, &quad, &e1, cap).unwrap();
        assert!(ok);
    }
}
