//! Finite-difference stencils and node-wise quadrature on sampled grids.

/// Fornberg's recursion: weights `w[k][j]` such that
/// `f^(k)(x0) ~= sum_j w[k][j] f(nodes[j])` for `k = 0..=max_order`.
pub fn fd_weights(x0: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let m = max_order;
    let mut c = vec![vec![0.0; n]; m + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Derivative of sampled values at every node of a (possibly non-uniform) grid.
///
/// Uses a five-point stencil centred where possible and shifted at the ends,
/// which is fourth-order accurate on smooth data.
pub fn gradient(s: &[f64], values: &[f64]) -> Vec<f64> {
    let n = s.len();
    assert_eq!(n, values.len());
    if n < 2 {
        return vec![0.0; n];
    }
    let width = 5.min(n);
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(width / 2).min(n - width);
            let nodes = &s[lo..lo + width];
            let w = fd_weights(s[i], nodes, 1);
            w[1].iter()
                .zip(&values[lo..lo + width])
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect()
}

/// Integral over `[a, b]` of the quadratic interpolating `(xs[k], fs[k])`.
fn quadratic_segment(xs: [f64; 3], fs: [f64; 3], a: f64, b: f64) -> f64 {
    // Gauss-Legendre with 2 points integrates cubics exactly.
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let g = half / 3f64.sqrt();
    let lag = |x: f64| -> f64 {
        let mut acc = 0.0;
        for k in 0..3 {
            let mut l = 1.0;
            for m in 0..3 {
                if m != k {
                    l *= (x - xs[m]) / (xs[k] - xs[m]);
                }
            }
            acc += fs[k] * l;
        }
        acc
    };
    half * (lag(mid - g) + lag(mid + g))
}

/// Cumulative composite Simpson integral, `out[0] = 0`.
///
/// Even nodes are reached by whole Simpson panels; odd nodes add the partial
/// integral of the quadratic through the panel they sit in.
pub fn cumulative_simpson(s: &[f64], f: &[f64]) -> Vec<f64> {
    let n = s.len();
    assert_eq!(n, f.len());
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n == 2 {
        out[1] = 0.5 * (s[1] - s[0]) * (f[0] + f[1]);
        return out;
    }
    let tri = |i: usize| ([s[i], s[i + 1], s[i + 2]], [f[i], f[i + 1], f[i + 2]]);
    let mut i = 0;
    while i + 2 < n {
        let (xs, fs) = tri(i);
        out[i + 1] = out[i] + quadratic_segment(xs, fs, s[i], s[i + 1]);
        out[i + 2] = out[i] + quadratic_segment(xs, fs, s[i], s[i + 2]);
        i += 2;
    }
    if i + 1 < n {
        // trailing odd interval uses the last three nodes
        let (xs, fs) = tri(n - 3);
        out[n - 1] = out[n - 2] + quadratic_segment(xs, fs, s[n - 2], s[n - 1]);
    }
    out
}

/// Whether successive spacings agree to a relative tolerance.
pub fn is_uniform(s: &[f64], rel: f64) -> bool {
    if s.len() < 3 {
        return true;
    }
    let h = s[1] - s[0];
    s.windows(2)
        .all(|w| ((w[1] - w[0]) - h).abs() <= rel * h.abs())
}

/// `(max - min) / |mean|`, the spread measure used for constancy checks.
pub fn relative_spread(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(*v), hi.max(*v))
        });
    let spread = hi - lo;
    let rel = if spread == 0.0 {
        0.0
    } else {
        spread / mean.abs()
    };
    (rel, mean)
}
