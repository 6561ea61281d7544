use std::cmp::Ordering;
use std::fmt;

/// A word `e_{-k1}⋯e_{-kn}` in the generators of the free graded Lie algebra,
/// stored as the letter degrees `(k1, …, kn)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Panics on a zero letter; use [`Word::try_new`] for untrusted input.
    pub fn new(letters: impl Into<Vec<u32>>) -> Word {
        Word::try_new(letters).expect("word letters must be positive")
    }

    pub fn try_new(letters: impl Into<Vec<u32>>) -> Option<Word> {
        let letters = letters.into();
        letters.iter().all(|&k| k >= 1).then_some(Word(letters))
    }

    pub fn letter(k: u32) -> Word {
        Word::new(vec![k])
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// All factorizations `self = prefix · suffix`, including the trivial ones.
    pub fn splits(&self) -> impl Iterator<Item = (Word, Word)> + '_ {
        (0..=self.0.len()).map(|i| (Word(self.0[..i].to_vec()), Word(self.0[i..].to_vec())))
    }

    /// Factorizations with both parts nonempty.
    pub fn proper_splits(&self) -> impl Iterator<Item = (Word, Word)> + '_ {
        (1..self.0.len()).map(|i| (Word(self.0[..i].to_vec()), Word(self.0[i..].to_vec())))
    }

    /// Every word (compositions) of degree exactly `n`, in canonical order.
    pub fn all_of_degree(n: u32) -> Vec<Word> {
        fn go(rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Word>) {
            if rest == 0 {
                out.push(Word(prefix.clone()));
                return;
            }
            for k in 1..=rest {
                prefix.push(k);
                go(rest - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Every nonempty word of degree at most `n`, in canonical order.
    pub fn all_up_to_degree(n: u32) -> Vec<Word> {
        (1..=n).flat_map(Word::all_of_degree).collect()
    }
}

/// Canonical order: by degree, then lexicographic on the letters.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_degree_then_lex() {
        let mut ws = vec![Word::new([2, 1]), Word::new([3]), Word::new([1]), Word::new([1, 1]), Word::new([2])];
        ws.sort();
        let shown: Vec<String> = ws.iter().map(Word::to_string).collect();
        assert_eq!(shown, ["(1)", "(1,1)", "(2)", "(2,1)", "(3)"]);
    }

    #[test]
    fn compositions_count() {
        for n in 1..=6 {
            assert_eq!(Word::all_of_degree(n).len(), 1 << (n - 1));
        }
        assert_eq!(Word::all_up_to_degree(6).len(), 63);
    }

    #[test]
    fn zero_letters_rejected() {
        assert!(Word::try_new(vec![1, 0]).is_none());
        assert_eq!(Word::new([1, 2]).degree(), 3);
    }
}
