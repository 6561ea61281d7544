use serde::{Deserialize, Serialize};

use crate::free_graded::{NCSeries, Word};
use crate::scalar_series::{LaurentSeries, Monomial, PolyCoeff, Rational, Symbol};

use super::kernel::{time_ordered_exp, Bound, GradedKernel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameRow {
    pub word: Word,
    pub coefficient: Rational,
    pub v_exp: u32,
    pub z_exp: i32,
}

/// Coefficients of the universal singular frame: the word `(k1,…,kn)`
/// carries `v^{Σk} z^{−n} / (k1 (k1+k2) ⋯ (k1+⋯+kn))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameTable {
    pub order: u32,
    pub rows: Vec<FrameRow>,
}

/// `1/(k1 (k1+k2) ⋯ (k1+⋯+kn))`.
pub fn frame_coefficient(w: &Word) -> Rational {
    let mut partial = 0i64;
    let mut denom = Rational::from_integer(1.into());
    for &k in w.letters() {
        partial += k as i64;
        denom *= Rational::from_integer(partial.into());
    }
    denom.recip()
}

/// The frame table and the corresponding group element `γ(z, v)` over all
/// words of degree `≤ order`.
pub fn universal_frame(order: u32) -> (FrameTable, NCSeries<LaurentSeries>) {
    let rows: Vec<FrameRow> = Word::all_up_to_degree(order)
        .into_iter()
        .map(|w| FrameRow { coefficient: frame_coefficient(&w), v_exp: w.degree(), z_exp: -(w.len() as i32), word: w })
        .collect();
    let mut g = NCSeries::one(order);
    for r in &rows {
        let c = PolyCoeff::monomial(Monomial::of(Symbol::V, r.v_exp), r.coefficient.clone());
        g = &g + &NCSeries::term(order, r.word.clone(), LaurentSeries::monomial(c, r.z_exp));
    }
    (FrameTable { order, rows }, g)
}

/// The same frame through the expansional: `β = Σ e_{-n}`, power flow over
/// `[0, v]`, prefactor `1/z` per letter.
pub fn universal_frame_by_integration(order: u32) -> NCSeries<LaurentSeries> {
    let beta = (1..=order).fold(NCSeries::zero(order), |acc, n| &acc + &NCSeries::generator(order, n));
    let kernel = GradedKernel::power(beta, LaurentSeries::z_pow(-1));
    time_ordered_exp(&kernel, &Bound::zero(), &Bound::At(LaurentSeries::symbol(Symbol::V)), 0)
        .expect("power flow over finite bounds")
}

#[derive(Serialize, Deserialize)]
struct RowJson {
    word: Vec<u32>,
    coefficient: String,
    v_exp: u32,
    z_exp: i32,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    order: u32,
    rows: Vec<RowJson>,
}

impl FrameTable {
    pub const CSV_HEADER: &'static str = "word;coefficient_num;coefficient_den;v_exp;z_exp";

    /// Semicolon-separated rows in canonical word order, with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{};{};{};{};{}\n",
                r.word,
                r.coefficient.numer(),
                r.coefficient.denom(),
                r.v_exp,
                r.z_exp
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = TableJson {
            order: self.order,
            rows: self
                .rows
                .iter()
                .map(|r| RowJson {
                    word: r.word.letters().to_vec(),
                    coefficient: crate::scalar_series::format_rational(&r.coefficient),
                    v_exp: r.v_exp,
                    z_exp: r.z_exp,
                })
                .collect(),
        };
        serde_json::to_value(j).expect("frame serialization is infallible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_series::rat;

    fn row<'a>(t: &'a FrameTable, letters: &[u32]) -> &'a FrameRow {
        t.rows.iter().find(|r| r.word.letters() == letters).unwrap()
    }

    #[test]
    fn stated_coefficients() {
        let (t, _) = universal_frame(6);
        assert_eq!(t.rows.len(), 63);
        assert_eq!(row(&t, &[1]).coefficient, rat(1, 1));
        assert_eq!((row(&t, &[1]).v_exp, row(&t, &[1]).z_exp), (1, -1));
        assert_eq!(row(&t, &[2, 1]).coefficient, rat(1, 6));
        assert_eq!((row(&t, &[2, 1]).v_exp, row(&t, &[2, 1]).z_exp), (3, -2));
        assert_eq!(row(&t, &[1, 1, 1]).coefficient, rat(1, 6));
        assert_eq!(row(&t, &[1, 1, 1]).z_exp, -3);
    }

    #[test]
    fn agrees_with_expansional() {
        for order in 1..=6 {
            let (_, g) = universal_frame(order);
            assert_eq!(g, universal_frame_by_integration(order));
        }
    }

    #[test]
    fn frame_is_grouplike() {
        let (_, g) = universal_frame(5);
        assert!(g.is_grouplike());
        assert!(g.coeff(&Word::empty()).agrees_with(&LaurentSeries::one()));
    }

    #[test]
    fn csv_layout() {
        let (t, _) = universal_frame(1);
        assert_eq!(t.to_csv(), "word;coefficient_num;coefficient_den;v_exp;z_exp\n(1);1;1;1;-1\n");
        let (t, _) = universal_frame(3);
        let coeffs: Vec<String> = t.rows.iter().map(|r| format!("{}={}", r.word, r.coefficient)).collect();
        assert_eq!(coeffs, ["(1)=1", "(1,1)=1/2", "(2)=1/2", "(1,1,1)=1/6", "(1,2)=1/3", "(2,1)=1/6", "(3)=1/3"]);
    }
}
