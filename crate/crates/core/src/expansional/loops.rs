use crate::free_graded::NCSeries;
use crate::scalar_series::{LaurentSeries, PolyCoeff, Rational, Symbol};

use super::kernel::{time_ordered_exp, Bound, GradedKernel};
use super::ExpansionalError;

fn minus_inverse_z() -> LaurentSeries {
    -&LaurentSeries::z_pow(-1)
}

/// `γ₋ = Te^{−(1/z) ∫_0^∞ θ_{−t}(β) dt}`. The word `(n1,…,nm)` built from
/// generators carries `(−1/z)^m / (n_m (n_{m−1}+n_m) ⋯ (n_1+⋯+n_m))`.
pub fn gamma_minus_from_beta(beta: &NCSeries<Rational>) -> NCSeries<LaurentSeries> {
    let kernel = GradedKernel::theta(beta.clone(), minus_inverse_z());
    time_ordered_exp(&kernel, &Bound::zero(), &Bound::Infinity, 0).expect("theta flow over [0, ∞) converges")
}

/// The loop `γ_μ(z) = Te^{−(1/z) ∫_∞^{−zL} θ_{−t}(β) dt} · θ_{zL}(γ_reg(z))`
/// with `L = log μ`, known modulo `z^{z_cap+1}`. An exact Birkhoff
/// decomposition needs `z_cap ≥ trunc − 1`, since negative parts of `m`
/// letters multiply values by `z^{−m}`.
pub fn gamma_mu(
    beta: &NCSeries<Rational>,
    gamma_reg: &NCSeries<LaurentSeries>,
    z_cap: i32,
) -> Result<NCSeries<LaurentSeries>, ExpansionalError> {
    if gamma_reg.terms().any(|(_, c)| c.pole_order() > 0) {
        return Err(ExpansionalError::NotRegular);
    }
    let trunc = beta.trunc().min(gamma_reg.trunc());
    let inner_cap = z_cap + trunc as i32;
    let zl = LaurentSeries::symbol(Symbol::L).shift(1);
    let kernel = GradedKernel::theta(beta.with_trunc(trunc), minus_inverse_z());
    let te = time_ordered_exp(&kernel, &Bound::Infinity, &Bound::At(-&zl), inner_cap)?;
    let reg = gamma_reg.with_trunc(trunc).theta(&zl, inner_cap)?;
    Ok(te.concat_mul(&reg).truncate_z(z_cap))
}

/// Recovers `β` from a negative part `γ₋ = gamma_minus_from_beta(β)`: the
/// residue of the degree-`n` part of `log γ₋` is `−β_n / n`.
pub fn beta_extract(gamma_minus: &NCSeries<LaurentSeries>) -> Result<NCSeries<Rational>, ExpansionalError> {
    let trunc = gamma_minus.trunc();
    for (w, c) in gamma_minus.terms() {
        if !w.is_empty() && !(c.is_exact() && c.regular_part().is_zero()) {
            return Err(ExpansionalError::NotPolePure(w.to_string()));
        }
    }
    if !gamma_minus.is_grouplike() {
        return Err(ExpansionalError::NotGrouplike);
    }
    let log = gamma_minus.log().map_err(|_| ExpansionalError::NotGrouplike)?;
    let mut beta = NCSeries::zero(trunc);
    for (w, c) in log.terms() {
        let residue = c.coeff(-1);
        if residue.is_zero() {
            continue;
        }
        let r = residue.as_rational().ok_or(ExpansionalError::NoBeta)?;
        let n = Rational::from_integer(w.degree().into());
        beta = &beta + &NCSeries::term(trunc, w.clone(), -(r * n));
    }
    if gamma_minus_from_beta(&beta) != *gamma_minus {
        return Err(ExpansionalError::NoBeta);
    }
    Ok(beta)
}

/// The renormalization group `rg(t) = exp(t Σ_n e_{−n})`.
pub fn rg_flow(t: &PolyCoeff, trunc: u32) -> NCSeries<PolyCoeff> {
    let e = (1..=trunc).fold(NCSeries::zero(trunc), |acc, n| &acc + &NCSeries::generator(trunc, n));
    e.scale(t).exp().expect("zero constant term")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_graded::{birkhoff_series, Word};
    use crate::scalar_series::{int, rat};

    fn e(k: u32) -> NCSeries<Rational> {
        NCSeries::generator(5, k)
    }

    #[test]
    fn single_generator_minus_parts() {
        let g = gamma_minus_from_beta(&e(1).scale_rational(&rat(3, 2)));
        assert_eq!(g.coeff(&Word::letter(1)), LaurentSeries::z_pow(-1).scale(&rat(-3, 2)));
        let g = gamma_minus_from_beta(&e(2));
        assert_eq!(g.coeff(&Word::letter(2)), LaurentSeries::z_pow(-1).scale(&rat(-1, 2)));
        assert_eq!(gamma_minus_from_beta(&NCSeries::zero(5)), NCSeries::one(5));
    }

    #[test]
    fn extract_roundtrip() {
        let beta = &(&e(1) + &e(2).scale_rational(&int(2))) + &e(1).bracket(&e(2)).scale_rational(&rat(1, 3));
        assert_eq!(beta_extract(&gamma_minus_from_beta(&beta)).unwrap(), beta);
        assert_eq!(beta_extract(&NCSeries::one(5)).unwrap(), NCSeries::zero(5));
        let bad = NCSeries::<LaurentSeries>::generator(5, 1).scale(&LaurentSeries::z_pow(-2)).exp().unwrap();
        assert_eq!(beta_extract(&bad), Err(ExpansionalError::NoBeta));
        let regular = NCSeries::<LaurentSeries>::generator(5, 1).exp().unwrap();
        assert!(matches!(beta_extract(&regular), Err(ExpansionalError::NotPolePure(_))));
    }

    #[test]
    fn minus_part_at_unit_scale() {
        let beta = &e(1) + &e(3).scale_rational(&rat(-1, 2));
        let g = gamma_mu(&beta, &NCSeries::one(5), 4).unwrap();
        let (minus, _) = birkhoff_series(&g);
        assert_eq!(minus, gamma_minus_from_beta(&beta));
    }

    #[test]
    fn rg_group_law() {
        let s = PolyCoeff::symbol(crate::scalar_series::Symbol::S);
        let t = PolyCoeff::symbol(crate::scalar_series::Symbol::T);
        assert_eq!(rg_flow(&PolyCoeff::zero(), 5), NCSeries::one(5));
        assert_eq!(rg_flow(&PolyCoeff::one(), 5).coeff(&Word::letter(1)), PolyCoeff::one());
        assert_eq!(rg_flow(&s, 5).concat_mul(&rg_flow(&t, 5)), rg_flow(&(&s + &t), 5));
    }
}
