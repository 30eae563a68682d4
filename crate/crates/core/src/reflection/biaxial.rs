//! Exact reflection from an orthorhombic (biaxial) half-space whose principal
//! axes are `x`, `y` in the surface and `z` along the normal.
//!
//! In coordinates rotated by `phi` the tangential fields obey a first-order
//! system `psi' ~ L psi`. Its eigenvalues come in pairs `+-sqrt(X)` with `X`
//! a root of `(X - A)(X - B) = C1 C2`; the two decaying modes enter a 4x4
//! boundary system whose solution gives the reflection matrix. On the
//! imaginary axis every entry of `L` is real; complex arithmetic is kept so
//! that a negative discriminant (a conjugate pair of roots) is handled.

use num_complex::Complex64;

use super::fresnel::decoupled;
use super::{ReflectionMatrix, TransverseWave};
use crate::error::ReflectionError;
use crate::material_models::DiagonalTensorResponse;

const REALITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct BiaxialSolveTrace {
    /// Entries of `L` in the rotated frame (zero-based indices).
    pub l: [[f64; 4]; 4],
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
    /// Roots `X = c^2 q^2 / omega^2`.
    pub x: [Complex64; 2],
    /// Normal wavevectors of the transmitted modes, 1/m (`Im q > 0`).
    pub q: [Complex64; 2],
    /// Amplitude ratios of each mode's tangential fields to its first component.
    pub alpha: [Option<Complex64>; 2],
    pub beta: [Option<Complex64>; 2],
    pub gamma: [Option<Complex64>; 2],
    /// Boundary system `M s = rhs` for TE and TM incidence, with solutions.
    pub m: [[Complex64; 4]; 4],
    pub rhs: [[Complex64; 4]; 2],
    pub solution: [[Complex64; 4]; 2],
    /// The plane of incidence was a symmetry plane and the decoupled formulas were used.
    pub decoupled: bool,
}

impl BiaxialSolveTrace {
    /// Largest `|(X - A)(X - B) - C1 C2|` relative to `max(A^2, B^2, |C1 C2|, 1)`.
    pub fn quartic_residual(&self) -> f64 {
        let c = self.c1 * self.c2;
        let scale = (self.a * self.a).max(self.b * self.b).max(c.abs()).max(1.0);
        self.x.iter().map(|&x| ((x - self.a) * (x - self.b) - c).norm() / scale).fold(0.0, f64::max)
    }

    /// Largest relative residual of the boundary system.
    pub fn boundary_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (rhs, sol) in self.rhs.iter().zip(&self.solution) {
            for i in 0..4 {
                let mut acc = Complex64::new(0.0, 0.0);
                let mut mag: f64 = rhs[i].norm();
                for j in 0..4 {
                    acc += self.m[i][j] * sol[j];
                    mag = mag.max((self.m[i][j] * sol[j]).norm());
                }
                worst = worst.max((acc - rhs[i]).norm() / mag.max(1e-300));
            }
        }
        worst
    }
}

fn solve4(mut m: [[Complex64; 4]; 4], mut b: [Complex64; 4]) -> Option<[Complex64; 4]> {
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))?;
        if m[piv][col].norm() == 0.0 {
            return None;
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..4 {
            let f = m[row][col] / m[col][col];
            for k in col..4 {
                let v = m[col][k];
                m[row][k] -= f * v;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = [Complex64::new(0.0, 0.0); 4];
    for row in (0..4).rev() {
        let mut acc = b[row];
        for k in row + 1..4 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

fn real_part(z: Complex64) -> Result<f64, ReflectionError> {
    if z.im.abs() > REALITY_TOL * z.re.abs().max(1.0) {
        return Err(ReflectionError::NonReal { residue: z.im });
    }
    if !z.re.is_finite() {
        return Err(ReflectionError::NonFinite);
    }
    Ok(z.re)
}

/// Reflection matrix of a biaxial half-space, with the intermediate quantities.
pub fn biaxial_exact_reflection(
    t: &DiagonalTensorResponse,
    w: &TransverseWave,
) -> Result<(ReflectionMatrix, BiaxialSolveTrace), ReflectionError> {
    let kap = w.kappa0();
    if kap <= 0.0 {
        return Err(ReflectionError::InvalidWave("the biaxial solver needs xi > 0".into()));
    }
    let (s, co) = w.phi.sin_cos();
    let (s2, c2, sc) = (s * s, co * co, s * co);
    let kk = (w.k_par / kap).powi(2);
    let DiagonalTensorResponse { eps_xx, eps_yy, eps_zz, mu_xx, mu_yy, mu_zz } = *t;

    let eps_11 = eps_xx * c2 + eps_yy * s2;
    let eps_22 = eps_xx * s2 + eps_yy * c2;
    let mu_11 = mu_xx * c2 + mu_yy * s2;
    let mu_22 = mu_xx * s2 + mu_yy * c2;

    let mut l = [[0.0; 4]; 4];
    l[0][2] = -(mu_xx - mu_yy) * sc;
    l[1][3] = -l[0][2];
    l[0][3] = -kk / eps_zz - mu_22;
    l[1][2] = mu_11;
    l[2][0] = (eps_xx - eps_yy) * sc;
    l[3][1] = -l[2][0];
    l[2][1] = kk / mu_zz + eps_22;
    l[3][0] = -eps_11;

    let a = l[0][2] * l[2][0] + l[0][3] * l[3][0];
    let b = l[1][2] * l[2][1] + l[1][3] * l[3][1];
    let c1 = l[0][2] * l[2][1] + l[0][3] * l[3][1];
    let c2c = l[1][2] * l[2][0] + l[1][3] * l[3][0];

    let k3 = w.k3();
    let cq = Complex64::new(k3 / kap, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let rhs = [[one, cq, zero, zero], [zero, zero, cq, one]];

    let coupling = l[0][2].abs().max(l[2][0].abs());
    let in_plane = mu_11.abs().max(eps_11.abs());
    if coupling <= 1e-15 * in_plane {
        let m = decoupled(eps_11, eps_22, eps_zz, mu_11, mu_22, mu_zz, w);
        let q = [Complex64::new(0.0, m.q_te), Complex64::new(0.0, m.q_tm)];
        let x = [Complex64::new((m.q_te / kap).powi(2), 0.0), Complex64::new((m.q_tm / kap).powi(2), 0.0)];
        let trace = BiaxialSolveTrace {
            l,
            a,
            b,
            c1,
            c2: c2c,
            x,
            q,
            alpha: [None; 2],
            beta: [None; 2],
            gamma: [None; 2],
            m: [[zero; 4]; 4],
            rhs,
            solution: [[zero; 4]; 2],
            decoupled: true,
        };
        return Ok((ReflectionMatrix::diagonal(m.r_te, m.r_tm), trace));
    }

    let disc = Complex64::new((a - b).powi(2) + 4.0 * c1 * c2c, 0.0).sqrt();
    let xs = [(a + b + disc) / 2.0, (a + b - disc) / 2.0];
    let gap = (xs[0] - xs[1]).norm();
    if gap <= 1e-10 * xs[0].norm().max(xs[1].norm()) {
        return Err(ReflectionError::DegenerateRoots { gap });
    }

    let mut m = [[zero; 4]; 4];
    m[0][0] = -one;
    m[1][0] = cq;
    m[2][1] = cq;
    m[3][1] = -one;
    let mut q = [zero; 2];
    let (mut alpha, mut beta, mut gamma) = ([None; 2], [None; 2], [None; 2]);
    for (mode, &x) in xs.iter().enumerate() {
        let lam = -x.sqrt();
        q[mode] = Complex64::new(0.0, kap) * x.sqrt();
        let v1 = [Complex64::new(c1, 0.0), x - a];
        let v2 = [x - b, Complex64::new(c2c, 0.0)];
        let n1 = v1[0].norm() + v1[1].norm();
        let n2 = v2[0].norm() + v2[1].norm();
        let (u0, u1) = if n1 >= n2 { (v1[0], v1[1]) } else { (v2[0], v2[1]) };
        let u2 = (l[2][0] * u0 + l[2][1] * u1) / lam;
        let u3 = (l[3][0] * u0 + l[3][1] * u1) / lam;
        if u0.norm() > 0.0 {
            alpha[mode] = Some(u1 / u0);
            beta[mode] = Some(u2 / u0);
            gamma[mode] = Some(u3 / u0);
        }
        let col = 2 + mode;
        m[0][col] = u1;
        m[1][col] = -u2;
        m[2][col] = u0;
        m[3][col] = u3;
    }
    let sol_te = solve4(m, rhs[0]).ok_or(ReflectionError::DegenerateRoots { gap })?;
    let sol_tm = solve4(m, rhs[1]).ok_or(ReflectionError::DegenerateRoots { gap })?;
    let r = ReflectionMatrix {
        te_te: real_part(sol_te[0])?,
        tm_te: real_part(sol_te[1])?,
        te_tm: real_part(sol_tm[0])?,
        tm_tm: real_part(sol_tm[1])?,
    };
    let trace = BiaxialSolveTrace {
        l,
        a,
        b,
        c1,
        c2: c2c,
        x: xs,
        q,
        alpha,
        beta,
        gamma,
        m,
        rhs,
        solution: [sol_te, sol_tm],
        decoupled: false,
    };
    Ok((r, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::SPEED_OF_LIGHT;
    use crate::material_models::ImaginaryFrequency;
    use crate::reflection::uniaxial_reflection;
    use proptest::prelude::*;

    fn wave(k: f64, kap: f64, phi: f64) -> TransverseWave {
        TransverseWave::new(k, phi, ImaginaryFrequency::new(kap * SPEED_OF_LIGHT).unwrap()).unwrap()
    }

    fn biax(exx: f64, eyy: f64, ezz: f64, mxx: f64, myy: f64, mzz: f64) -> DiagonalTensorResponse {
        DiagonalTensorResponse { eps_xx: exx, eps_yy: eyy, eps_zz: ezz, mu_xx: mxx, mu_yy: myy, mu_zz: mzz }
    }

    #[test]
    fn vacuum_gives_zero() {
        let (r, _) = biaxial_exact_reflection(&DiagonalTensorResponse::vacuum(), &wave(1.3, 0.7, 0.4)).unwrap();
        assert!(r.max_abs_diff(&ReflectionMatrix::zero()) < 1e-15);
    }

    #[test]
    fn reference_point() {
        // Values from an independent dense-linear-algebra implementation of the same boundary problem.
        let t = biax(3.0, 3.6, 7.0, 1.8, 1.8, 1.3);
        let (r, tr) = biaxial_exact_reflection(&t, &wave(0.7, 1.1, 0.4)).unwrap();
        assert!(!tr.decoupled);
        assert!(tr.quartic_residual() < 1e-12);
        assert!(tr.boundary_residual() < 1e-12);
        let expect = ReflectionMatrix {
            te_te: -0.102_268_874_564_500_2,
            te_tm: 0.015_234_566_274_710_26,
            tm_te: -0.015_234_566_274_710_22,
            tm_tm: 0.208_622_867_463_966_9,
        };
        assert!(r.max_abs_diff(&expect) < 1e-13, "{r:?}");

        let t = biax(2.0, 5.0, 3.0, 1.5, 1.1, 2.0);
        let (r, _) = biaxial_exact_reflection(&t, &wave(1.7, 0.3, 1.0)).unwrap();
        let expect = ReflectionMatrix {
            te_te: 0.190_105_669_692_754,
            te_tm: 0.021_927_843_698_172_19,
            tm_te: -0.021_927_843_698_172_15,
            tm_tm: 0.539_944_166_603_186,
        };
        assert!(r.max_abs_diff(&expect) < 1e-13, "{r:?}");
    }

    #[test]
    fn axes_decouple() {
        let t = biax(3.0, 4.5, 7.0, 1.8, 1.2, 1.3);
        for phi in [0.0, std::f64::consts::FRAC_PI_2] {
            let (r, tr) = biaxial_exact_reflection(&t, &wave(0.9, 0.4, phi)).unwrap();
            assert!(tr.decoupled);
            assert!(r.te_tm.abs() < 1e-10 && r.tm_te.abs() < 1e-10);
            let (near, tr) = biaxial_exact_reflection(&t, &wave(0.9, 0.4, phi + 1e-7)).unwrap();
            assert!(!tr.decoupled);
            assert!(r.max_abs_diff(&near) < 1e-6);
        }
    }

    proptest! {
        #[test]
        fn reduces_to_uniaxial(
            e in 1f64..40.0, ez in 1f64..40.0, m in 1f64..5.0, mz in 1f64..5.0,
            k in 1e-3f64..5.0, kap in 1e-2f64..5.0, phi in 0f64..1.5,
        ) {
            let t = DiagonalTensorResponse::uniaxial(e, ez, m, mz);
            let w = wave(k, kap, phi);
            let (exact, _) = biaxial_exact_reflection(&t, &w).unwrap();
            let uni = uniaxial_reflection(&t, &w).unwrap();
            prop_assert!(exact.max_abs_diff(&uni) < 1e-10);
        }

        #[test]
        fn residuals_and_branches(
            exx in 1f64..30.0, eyy in 1f64..30.0, ezz in 1f64..30.0,
            mxx in 1f64..4.0, myy in 1f64..4.0, mzz in 1f64..4.0,
            k in 1e-2f64..5.0, kap in 1e-2f64..5.0, phi in 0.01f64..1.56,
        ) {
            prop_assume!((exx - eyy).abs() > 1e-3 || (mxx - myy).abs() > 1e-3);
            let t = biax(exx, eyy, ezz, mxx, myy, mzz);
            let (r, tr) = biaxial_exact_reflection(&t, &wave(k, kap, phi)).unwrap();
            prop_assert!(tr.quartic_residual() < 1e-10);
            prop_assert!(tr.boundary_residual() < 1e-9);
            for q in tr.q {
                prop_assert!(q.im > 0.0);
            }
            prop_assert!(r.te_te.abs() <= 1.0 + 1e-12 && r.tm_tm.abs() <= 1.0 + 1e-12);
        }
    }
}
