//! Brute-force reference implementations, kept independent of the library
//! code paths they check.

#![allow(dead_code)]

/// All-pairs strict dominance filter with exact duplicates collapsed,
/// sorted lexicographically.
pub fn pareto_front_all_pairs(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let dominates = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| x > y);
    let mut out: Vec<Vec<f64>> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let dominated = points.iter().enumerate().any(|(j, q)| i != j && dominates(q, p));
        if !dominated && !out.iter().any(|o| o == p) {
            out.push(p.clone());
        }
    }
    out.sort_by(|a, b| {
        a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}

/// Midpoint-rule integration of the box union over a `resolution`^2 grid on
/// the unit square. Assumes every coordinate lies in [0, 1].
pub fn hypervolume_grid(points: &[(f64, f64)], reference: (f64, f64), resolution: usize) -> f64 {
    let h = 1.0 / resolution as f64;
    let mut covered = 0u64;
    for i in 0..resolution {
        let cx = (i as f64 + 0.5) * h;
        if cx <= reference.0 {
            continue;
        }
        // Tallest box reaching this column.
        let top = points.iter().filter(|&&(x, _)| x >= cx).map(|&(_, y)| y).fold(f64::NEG_INFINITY, f64::max);
        for j in 0..resolution {
            let cy = (j as f64 + 0.5) * h;
            if cy > reference.1 && cy <= top {
                covered += 1;
            }
        }
    }
    covered as f64 * h * h
}

/// Direct evaluation of the weighted harmonic mean from raw counts.
pub fn fbeta_from_counts(tp: u64, fn_: u64, fp: u64, beta: f64) -> f64 {
    let b2 = beta * beta;
    let num = (1.0 + b2) * tp as f64;
    let den = (1.0 + b2) * tp as f64 + b2 * fn_ as f64 + fp as f64;
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}
