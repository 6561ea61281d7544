//! Floating-point cross-checks: a discretized product integral and a matrix
//! exponential for the scattering formula. Used only to validate the exact
//! code paths.

use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::free_graded::{NCSeries, Word};
use crate::scalar_series::{to_f64, LaurentSeries, SeriesError, Symbol};

use super::kernel::{GradedKernel, KernelKind};

/// Dense indexing of all words of degree `≤ trunc`, the empty word first.
struct WordIndex {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl WordIndex {
    fn new(trunc: u32) -> Self {
        let mut words = vec![Word::empty()];
        words.extend(Word::all_up_to_degree(trunc));
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        WordIndex { words, index }
    }

    fn to_series(&self, trunc: u32, v: &[f64]) -> NCSeries<f64> {
        NCSeries::from_terms(trunc, self.words.iter().cloned().zip(v.iter().copied()))
    }
}

/// Right multiplication by a sparse element, as (source, target, factor) triples.
struct SparseRight {
    entries: Vec<(usize, usize, f64)>,
}

impl SparseRight {
    fn new(idx: &WordIndex, trunc: u32, x: &[(Word, f64)]) -> Self {
        let mut entries = Vec::new();
        for (i, u) in idx.words.iter().enumerate() {
            for (w, c) in x {
                if u.degree() + w.degree() <= trunc {
                    entries.push((i, idx.index[&u.concat(w)], *c));
                }
            }
        }
        SparseRight { entries }
    }

    fn apply(&self, a: &[f64], factor: f64, out: &mut [f64]) {
        out.iter_mut().for_each(|x| *x = 0.0);
        for &(i, j, c) in &self.entries {
            out[j] += a[i] * c * factor;
        }
    }
}

/// Numeric kernel weight `w_n(s)`.
fn weight(kind: KernelKind, n: u32, s: f64) -> f64 {
    match kind {
        KernelKind::PowerFlow => s.powi(n as i32 - 1),
        KernelKind::ThetaFlow => (-(n as f64) * s).exp(),
    }
}

/// Product integral `A ← A · exp(α(s_mid) Δs)` from `a` to `b` (either order),
/// with the symbols and `z` of the kernel prefactor set numerically. The
/// step exponential is expanded to third order. Returns samples
/// `(s, A(s))` every `sample_every` steps, ending at `b`.
pub fn product_integral_path(
    kernel: &GradedKernel,
    z0: f64,
    assignment: &dyn Fn(Symbol) -> f64,
    a: f64,
    b: f64,
    steps: usize,
    sample_every: usize,
) -> Result<Vec<(f64, NCSeries<f64>)>, SeriesError> {
    let trunc = kernel.trunc();
    let idx = WordIndex::new(trunc);
    let scale = kernel.scale.eval_numeric(z0, assignment)?;
    let comps: Vec<(u32, SparseRight)> = kernel
        .components()
        .into_iter()
        .map(|(n, b)| {
            let x: Vec<(Word, f64)> = b.terms().map(|(w, c)| (w.clone(), to_f64(c) * scale)).collect();
            (n, SparseRight::new(&idx, trunc, &x))
        })
        .collect();
    let h = (b - a) / steps as f64;
    let dim = idx.words.len();
    let mut state = vec![0.0; dim];
    state[0] = 1.0;
    let mut term = vec![0.0; dim];
    let mut next = vec![0.0; dim];
    let mut scratch = vec![0.0; dim];
    let mut samples = vec![(a, idx.to_series(trunc, &state))];
    for step in 0..steps {
        let mid = a + (step as f64 + 0.5) * h;
        // term_k = term_{k−1} · α h / k, summed into the new state.
        let mut acc = state.clone();
        term.copy_from_slice(&state);
        for k in 1..=3 {
            next.iter_mut().for_each(|x| *x = 0.0);
            for (n, op) in &comps {
                op.apply(&term, weight(kernel.kind, *n, mid) * h / k as f64, &mut scratch);
                next.iter_mut().zip(&scratch).for_each(|(x, y)| *x += y);
            }
            acc.iter_mut().zip(&next).for_each(|(x, y)| *x += y);
            std::mem::swap(&mut term, &mut next);
        }
        state = acc;
        if (step + 1) % sample_every == 0 || step + 1 == steps {
            samples.push((a + (step + 1) as f64 * h, idx.to_series(trunc, &state)));
        }
    }
    Ok(samples)
}

/// The product integral's end value, see [`product_integral_path`].
pub fn product_integral_oracle(
    kernel: &GradedKernel,
    z0: f64,
    assignment: &dyn Fn(Symbol) -> f64,
    a: f64,
    b: f64,
    steps: usize,
) -> Result<NCSeries<f64>, SeriesError> {
    let path = product_integral_path(kernel, z0, assignment, a, b, steps, steps)?;
    Ok(path.into_iter().last().expect("path has samples").1)
}

/// `e^{−t(X + Z0)} e^{t Z0}` with `X = β/z0`, computed as a matrix exponential
/// on the truncated enveloping algebra where `X` acts by left multiplication
/// and `Z0` by the grading. Applied to the unit it yields the group element.
pub fn scattering_oracle(beta: &NCSeries<crate::scalar_series::Rational>, t: f64, z0: f64) -> NCSeries<f64> {
    let trunc = beta.trunc();
    let idx = WordIndex::new(trunc);
    let dim = idx.words.len();
    let mut m = DMatrix::<f64>::zeros(dim, dim);
    for (j, w) in idx.words.iter().enumerate() {
        m[(j, j)] -= t * w.degree() as f64;
        for (u, c) in beta.terms() {
            if u.degree() + w.degree() <= trunc {
                m[(idx.index[&u.concat(w)], j)] -= t * to_f64(c) / z0;
            }
        }
    }
    let e = m.exp();
    let v: Vec<f64> = (0..dim).map(|i| e[(i, 0)]).collect();
    idx.to_series(trunc, &v)
}

/// Evaluates every coefficient numerically.
pub fn eval_series(
    g: &NCSeries<LaurentSeries>,
    z0: f64,
    assignment: &dyn Fn(Symbol) -> f64,
) -> Result<NCSeries<f64>, SeriesError> {
    g.try_map_coeffs(|c| c.eval_numeric(z0, assignment))
}

/// Largest coefficientwise difference over the union of supports.
pub fn max_abs_diff(x: &NCSeries<f64>, y: &NCSeries<f64>) -> f64 {
    x.terms()
        .map(|(w, _)| w)
        .chain(y.terms().map(|(w, _)| w))
        .map(|w| (x.coeff(w) - y.coeff(w)).abs())
        .fold(0.0, f64::max)
}
