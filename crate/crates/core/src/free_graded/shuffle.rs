use std::collections::BTreeMap;

use num_traits::One;

use super::series::NCSeries;
use super::word::Word;
use crate::scalar_series::Rational;

/// The shuffle product `u ⧢ w`, summed over all riffle shuffles with
/// multiplicity. The result is truncated at `deg u + deg w`.
pub fn shuffle(u: &Word, w: &Word) -> NCSeries<Rational> {
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    riffle(u.letters(), w.letters(), &mut Vec::new(), &mut counts);
    NCSeries::from_terms(
        u.degree() + w.degree(),
        counts.into_iter().map(|(letters, n)| (Word::new(letters), Rational::from_integer(n.into()))),
    )
}

fn riffle(a: &[u32], b: &[u32], prefix: &mut Vec<u32>, out: &mut BTreeMap<Vec<u32>, u64>) {
    if a.is_empty() || b.is_empty() {
        let mut word = prefix.clone();
        word.extend_from_slice(a);
        word.extend_from_slice(b);
        *out.entry(word).or_default() += 1;
        return;
    }
    prefix.push(a[0]);
    riffle(&a[1..], b, prefix, out);
    prefix.pop();
    prefix.push(b[0]);
    riffle(a, &b[1..], prefix, out);
    prefix.pop();
}

/// Shuffle product extended bilinearly to rational word combinations.
pub fn shuffle_series(x: &NCSeries<Rational>, y: &NCSeries<Rational>) -> NCSeries<Rational> {
    let trunc = x.trunc().min(y.trunc());
    let mut out = NCSeries::zero(trunc);
    for (u, a) in x.terms() {
        for (w, b) in y.terms() {
            if u.degree() + w.degree() <= trunc {
                let s = shuffle(u, w).with_trunc(trunc);
                out = &out + &s.scale_rational(&(a * b));
            }
        }
    }
    out
}

/// Number of shuffles of an `m`-letter and an `n`-letter word, `C(m+n, m)`.
pub fn shuffle_count(m: usize, n: usize) -> Rational {
    (1..=m).fold(Rational::one(), |acc, i| acc * Rational::new((n + i).into(), i.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_series::int;

    fn w(letters: &[u32]) -> Word {
        Word::new(letters.to_vec())
    }

    #[test]
    fn shuffle_examples() {
        let s = shuffle(&w(&[1]), &w(&[2]));
        assert_eq!(s, NCSeries::from_terms(3, [(w(&[1, 2]), int(1)), (w(&[2, 1]), int(1))]));
        let x = w(&[2, 1, 3]);
        assert_eq!(shuffle(&Word::empty(), &x), NCSeries::term(6, x.clone(), int(1)));
        assert_eq!(shuffle(&w(&[1]), &w(&[1])), NCSeries::term(2, w(&[1, 1]), int(2)));
    }

    #[test]
    fn multiplicities_sum_to_binomial() {
        let s = shuffle(&w(&[1, 2]), &w(&[1, 3, 1]));
        let total = s.terms().fold(Rational::from_integer(0.into()), |acc, (_, c)| acc + c);
        assert_eq!(total, shuffle_count(2, 3));
        assert_eq!(total, int(10));
    }

    #[test]
    fn shuffle_is_commutative() {
        let a = w(&[1, 2, 1]);
        let b = w(&[3, 1]);
        assert_eq!(shuffle(&a, &b), shuffle(&b, &a));
    }
}
