//! Orthonormal row spaces in the `2^n`-dimensional coefficient space, with
//! the standard Hermitian inner product.

use num_complex::Complex64;

pub(crate) type Row = Vec<Complex64>;

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `r -= <q, r> q` for unit `q`.
fn remove_component(q: &[Complex64], r: &mut [Complex64]) {
    let d = dot(q, r);
    for (x, y) in r.iter_mut().zip(q) {
        *x -= d * y;
    }
}

#[derive(Debug, Clone)]
pub(crate) struct RowSpace {
    len: usize,
    rows: Vec<Row>,
}

impl RowSpace {
    pub(crate) fn full(len: usize) -> Self {
        let rows = (0..len)
            .map(|i| {
                let mut r = vec![Complex64::new(0.0, 0.0); len];
                r[i] = Complex64::new(1.0, 0.0);
                r
            })
            .collect();
        Self { len, rows }
    }

    /// Span of `rows`, each rescaled to unit length first so that `eps` acts
    /// as a relative rank threshold.
    pub(crate) fn span(len: usize, rows: &[Row], eps: f64) -> Self {
        Self {
            len,
            rows: extend(&[], rows, eps),
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn into_rows(self) -> Vec<Row> {
        self.rows
    }

    pub(crate) fn complement(&self, eps: f64) -> Self {
        Self {
            len: self.len,
            rows: extend(&self.rows, &Self::full(self.len).rows, eps),
        }
    }

    pub(crate) fn sum(len: usize, spaces: &[RowSpace], eps: f64) -> Self {
        let all: Vec<Row> = spaces.iter().flat_map(|s| s.rows.iter().cloned()).collect();
        Self::span(len, &all, eps)
    }

    /// `∩ S = (Σ S⊥)⊥`
    pub(crate) fn intersect(len: usize, spaces: &[RowSpace], eps: f64) -> Self {
        let complements: Vec<_> = spaces.iter().map(|s| s.complement(eps)).collect();
        Self::sum(len, &complements, eps).complement(eps)
    }

    /// `‖v - P v‖ / ‖v‖`, or zero for the zero vector.
    pub(crate) fn relative_residual(&self, v: &[Complex64]) -> f64 {
        let n = norm(v);
        if n == 0.0 {
            return 0.0;
        }
        let mut r = v.to_vec();
        for _ in 0..2 {
            for q in &self.rows {
                remove_component(q, &mut r);
            }
        }
        norm(&r) / n
    }
}

/// Pivoted modified Gram–Schmidt of `candidates` against the orthonormal
/// `existing` rows. Returns only the newly accepted rows.
fn extend(existing: &[Row], candidates: &[Row], eps: f64) -> Vec<Row> {
    let mut residuals: Vec<Row> = candidates
        .iter()
        .filter_map(|c| {
            let n = norm(c);
            (n > 0.0).then(|| c.iter().map(|x| x / n).collect::<Row>())
        })
        .collect();
    for r in residuals.iter_mut() {
        for _ in 0..2 {
            for q in existing {
                remove_component(q, r);
            }
        }
    }
    let mut alive = vec![true; residuals.len()];
    let mut accepted: Vec<Row> = Vec::new();
    loop {
        let mut pivot: Option<(usize, f64)> = None;
        for (i, r) in residuals.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            let n = norm(r);
            if pivot.is_none_or(|(_, best)| n > best) {
                pivot = Some((i, n));
            }
        }
        let Some((p, pn)) = pivot else { break };
        if pn <= eps {
            break;
        }
        alive[p] = false;
        let mut q: Row = residuals[p].iter().map(|x| x / pn).collect();
        for b in existing.iter().chain(&accepted) {
            remove_component(b, &mut q);
        }
        let qn = norm(&q);
        q.iter_mut().for_each(|x| *x /= qn);
        for (i, r) in residuals.iter_mut().enumerate() {
            if alive[i] {
                remove_component(&q, r);
            }
        }
        accepted.push(q);
    }
    accepted
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(xs: &[f64]) -> Row {
        xs.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn rank_and_complement() {
        let s = RowSpace::span(3, &[row(&[1.0, 1.0, 0.0]), row(&[2.0, 2.0, 0.0])], 1e-9);
        assert_eq!(s.dim(), 1);
        let c = s.complement(1e-9);
        assert_eq!(c.dim(), 2);
        assert!(c.relative_residual(&row(&[1.0, -1.0, 5.0])) < 1e-14);
        assert!(c.relative_residual(&row(&[1.0, 1.0, 0.0])) > 0.99);
    }

    #[test]
    fn intersection_of_planes() {
        let a = RowSpace::span(3, &[row(&[1.0, 0.0, 0.0]), row(&[0.0, 1.0, 0.0])], 1e-9);
        let b = RowSpace::span(3, &[row(&[0.0, 1.0, 0.0]), row(&[0.0, 0.0, 1.0])], 1e-9);
        let i = RowSpace::intersect(3, &[a, b], 1e-9);
        assert_eq!(i.dim(), 1);
        assert!(i.relative_residual(&row(&[0.0, 3.0, 0.0])) < 1e-14);
        assert_eq!(RowSpace::intersect(3, &[], 1e-9).dim(), 3);
    }
}
