use super::series::NCSeries;
use crate::scalar_series::{Coefficient, LaurentSeries};

/// Birkhoff decomposition `g = g₋⁻¹ g₊` of a series with Laurent coefficients,
/// word by word: `⟨g₋, w⟩ = −T(⟨g, w⟩ + Σ ⟨g₋, u⟩⟨g, v⟩)` over proper
/// factorizations `w = uv`, with `T` the pole part.
pub fn birkhoff_series(g: &NCSeries<LaurentSeries>) -> (NCSeries<LaurentSeries>, NCSeries<LaurentSeries>) {
    let trunc = g.trunc();
    let mut minus: NCSeries<LaurentSeries> = NCSeries::one(trunc);
    let mut plus: NCSeries<LaurentSeries> = NCSeries::one(trunc);
    let words = super::Word::all_up_to_degree(trunc);
    for w in &words {
        let mut bar = g.coeff(w);
        for (u, v) in w.proper_splits() {
            let m = minus.coeff(&u);
            if !m.is_zero() {
                bar = &bar + &(&m * &g.coeff(&v));
            }
        }
        let pole = bar.pole_part();
        minus = &minus + &NCSeries::term(trunc, w.clone(), pole.neg_ref());
        plus = &plus + &NCSeries::term(trunc, w.clone(), &bar - &pole);
    }
    (minus, plus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_graded::Word;
    use crate::scalar_series::{int, rat, PolyCoeff};

    #[test]
    fn single_letter_split() {
        let c = LaurentSeries::from_terms([(-1, PolyCoeff::constant(int(3))), (0, PolyCoeff::constant(int(5)))]);
        let g = NCSeries::<LaurentSeries>::generator(4, 1).scale(&c).exp().unwrap();
        let (minus, plus) = birkhoff_series(&g);
        assert_eq!(minus.coeff(&Word::letter(1)), LaurentSeries::z_pow(-1).scale(&int(-3)));
        assert_eq!(plus.coeff(&Word::letter(1)), LaurentSeries::rational(int(5)));
        let rebuilt = minus.inverse().unwrap().concat_mul(&plus);
        assert!(rebuilt.agrees(&g));
        assert!(minus.is_grouplike() && plus.is_grouplike());
        let regular = NCSeries::<LaurentSeries>::generator(4, 2).scale(&LaurentSeries::rational(rat(1, 3))).exp().unwrap();
        let (m, p) = birkhoff_series(&regular);
        assert_eq!(m, NCSeries::one(4));
        assert_eq!(p, regular);
    }
}
