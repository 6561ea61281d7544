use std::collections::BTreeMap;

/// A finite-dimensional graded vector space `E = ⊕ E_n`. Basis vectors are
/// ordered by degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedSpace {
    dims: BTreeMap<i32, usize>,
}

impl GradedSpace {
    pub fn new(dims: impl IntoIterator<Item = (i32, usize)>) -> Self {
        let mut out = BTreeMap::new();
        for (n, d) in dims {
            *out.entry(n).or_insert(0) += d;
        }
        out.retain(|_, d| *d > 0);
        GradedSpace { dims: out }
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// The degree of each basis vector.
    pub fn basis_degrees(&self) -> Vec<i32> {
        self.dims.iter().flat_map(|(&n, &d)| std::iter::repeat(n).take(d)).collect()
    }

    /// Labels `E<n>.<i>` of the basis vectors.
    pub fn basis_labels(&self) -> Vec<String> {
        self.dims.iter().flat_map(|(&n, &d)| (0..d).map(move |i| format!("E{n}.{i}"))).collect()
    }

    /// Index of the first basis vector of degree `n`.
    pub fn offset(&self, n: i32) -> usize {
        self.dims.range(..n).map(|(_, d)| d).sum()
    }

    pub fn direct_sum(&self, other: &GradedSpace) -> GradedSpace {
        GradedSpace::new(self.dims.iter().chain(&other.dims).map(|(&n, &d)| (n, d)))
    }
}

/// The weight filtration `W^{−n}(E) = ⊕_{m≥n} E_m`.
#[derive(Clone, Debug)]
pub struct WFiltration<'a> {
    space: &'a GradedSpace,
}

impl<'a> WFiltration<'a> {
    pub fn new(space: &'a GradedSpace) -> Self {
        WFiltration { space }
    }

    /// `dim W^k(E)`.
    pub fn dim(&self, k: i32) -> usize {
        self.space.dims.range(-k..).map(|(_, d)| d).sum()
    }

    /// `dim Gr^W_n = dim W^{−n} − dim W^{−n−1}`.
    pub fn graded_dim(&self, n: i32) -> usize {
        self.dim(-n) - self.dim(-n - 1)
    }

    /// Whether basis vector `i` lies in `W^k(E)`.
    pub fn contains(&self, k: i32, i: usize) -> bool {
        self.space.basis_degrees()[i] >= -k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filtration_is_decreasing_and_exhaustive() {
        let e = GradedSpace::new([(-1, 2), (0, 1), (3, 2)]);
        let w = WFiltration::new(&e);
        for k in -5..5 {
            assert!(w.dim(k) <= w.dim(k + 1));
        }
        assert_eq!(w.dim(10), 5);
        assert_eq!(w.dim(-10), 0);
        for n in -2..5 {
            assert_eq!(w.graded_dim(n), e.dim(n));
        }
        assert_eq!(e.basis_degrees(), vec![-1, -1, 0, 3, 3]);
        assert_eq!(e.offset(3), 3);
        assert!(w.contains(1, 0) && !w.contains(0, 0));
    }
}
