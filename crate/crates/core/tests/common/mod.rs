//! Independent oracles shared by the integration suites. None of these go
//! through the library's analytic formulas or its matrix routines.

#![allow(dead_code)]

use entswap::{BellLabel, ComplexMatrix, C64};

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Bell amplitudes written out by hand.
pub fn bell_amplitudes(label: BellLabel) -> [f64; 4] {
    match label {
        BellLabel::PhiPlus => [H, 0.0, 0.0, H],
        BellLabel::PhiMinus => [H, 0.0, 0.0, -H],
        BellLabel::PsiPlus => [0.0, H, H, 0.0],
        BellLabel::PsiMinus => [0.0, H, -H, 0.0],
    }
}

/// Applies `|B⟩⟨B|_CC' ⊗ I_AB` to a 16-amplitude state on `(A, C, C', B)`.
///
/// Returns the outcome probability and the renormalized AB remainder
/// (`None` when the projection vanishes).
pub fn project_bell(state: &[C64], label: BellLabel) -> (f64, Option<[C64; 4]>) {
    assert_eq!(state.len(), 16);
    let bell = bell_amplitudes(label);
    let mut ab = [C64::new(0.0, 0.0); 4];
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = C64::new(0.0, 0.0);
            for c in 0..2 {
                for cp in 0..2 {
                    acc += bell[c * 2 + cp] * state[a * 8 + c * 4 + cp * 2 + b];
                }
            }
            ab[a * 2 + b] = acc;
        }
    }
    let prob: f64 = ab.iter().map(|z| z.norm_sqr()).sum();
    if prob < 1e-300 {
        return (prob, None);
    }
    let n = prob.sqrt();
    (prob, Some(ab.map(|z| z / n)))
}

/// `|⟨x|y⟩|²`
pub fn fidelity(x: &[C64], y: &[C64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| a.conj() * b)
        .sum::<C64>()
        .norm_sqr()
}

/// Coefficients of `|Bell⟩_CC' |ab⟩_AB` in `|ξ(p)⟩|η(q)⟩`, written out from the
/// branch expansion: index `[bell][a*2 + b]`.
pub fn expansion_coefficients(p: f64, q: f64) -> [[f64; 4]; 4] {
    let s = |x: f64| x.sqrt();
    let phi0 = s(p * q) * H;
    let phi1 = s((1.0 - p) * (1.0 - q)) * H;
    let psi0 = s(p * (1.0 - q)) * H;
    let psi1 = s((1.0 - p) * q) * H;
    [
        [phi0, 0.0, 0.0, phi1],
        [phi0, 0.0, 0.0, -phi1],
        [0.0, psi0, psi1, 0.0],
        [0.0, psi0, -psi1, 0.0],
    ]
}

/// `ρ_A` and `ρ_B` of a bipartite density matrix by direct index summation.
pub fn brute_reductions(
    rho: &ComplexMatrix,
    da: usize,
    db: usize,
) -> (ComplexMatrix, ComplexMatrix) {
    let mut ra = ComplexMatrix::zeros(da, da);
    let mut rb = ComplexMatrix::zeros(db, db);
    for i in 0..da {
        for j in 0..da {
            for k in 0..db {
                ra[(i, j)] += rho[(i * db + k, j * db + k)];
            }
        }
    }
    for i in 0..db {
        for j in 0..db {
            for k in 0..da {
                rb[(i, j)] += rho[(k * db + i, k * db + j)];
            }
        }
    }
    (ra, rb)
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(m: &ComplexMatrix) -> C64 {
    let n = m.rows();
    let mut a: Vec<Vec<C64>> = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)]).collect())
        .collect();
    let mut det = C64::new(1.0, 0.0);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))
            .unwrap();
        if a[piv][col].norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        let pivot = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            let f = row[col] / pivot[col];
            for (x, v) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x -= f * v;
            }
        }
    }
    det
}

/// Roots of `det(H - λI)` found by scanning `[-R, R]` for sign changes and bisecting.
/// Assumes simple eigenvalues separated by more than the scan step.
pub fn bisection_eigenvalues(h: &ComplexMatrix, steps: usize) -> Vec<f64> {
    let n = h.rows();
    let radius = (0..n)
        .map(|i| (0..n).map(|j| h[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
        + 1.0;
    let charpoly = |lam: f64| {
        let mut s = h.clone();
        for i in 0..n {
            s[(i, i)] -= C64::new(lam, 0.0);
        }
        determinant(&s).re
    };
    let mut roots = Vec::new();
    let dx = 2.0 * radius / steps as f64;
    let mut x0 = -radius;
    let mut f0 = charpoly(x0);
    for k in 1..=steps {
        let x1 = -radius + k as f64 * dx;
        let f1 = charpoly(x1);
        if f0 == 0.0 {
            roots.push(x0);
        } else if f0 * f1 < 0.0 {
            let (mut lo, mut hi, mut flo) = (x0, x1, f0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let fm = charpoly(mid);
                if fm == 0.0 || hi - lo < 1e-15 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if flo * fm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}

/// Golden-section search for the maximizer of a unimodal `f` on `[lo, hi]`.
pub fn golden_argmax(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-10 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

/// `-x log2 x - (1-x) log2(1-x)` written directly.
pub fn h2(x: f64) -> f64 {
    let t = |y: f64| if y <= 0.0 { 0.0 } else { -y * y.log2() };
    t(x) + t(1.0 - x)
}
