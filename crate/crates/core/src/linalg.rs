//! Small fixed-size complex matrices backing the two-qubit algebra.
//!
//! Everything here is 2x2 or 4x4, so operations are written directly against
//! arrays; no general-purpose linear algebra is pulled in for this.

use num_complex::Complex;

use crate::{scalar, Real};

/// Dense N x N complex matrix, row major.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct CMat<T, const N: usize> {
    pub m: [[Complex<T>; N]; N],
}

pub type CMat2<T> = CMat<T, 2>;
pub type CMat4<T> = CMat<T, 4>;

impl<T: Real, const N: usize> CMat<T, N> {
    pub fn zero() -> Self {
        Self {
            m: [[Complex::new(T::zero(), T::zero()); N]; N],
        }
    }

    pub fn identity() -> Self {
        let mut out = Self::zero();
        for i in 0..N {
            out.m[i][i] = Complex::new(T::one(), T::zero());
        }
        out
    }

    pub fn from_rows(m: [[Complex<T>; N]; N]) -> Self {
        Self { m }
    }

    /// Outer product |v><v| of an (unnormalized) column vector.
    pub fn outer(v: [Complex<T>; N]) -> Self {
        let mut out = Self::zero();
        for i in 0..N {
            for j in 0..N {
                out.m[i][j] = v[i] * v[j].conj();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..N {
            for k in 0..N {
                let a = self.m[i][k];
                for j in 0..N {
                    out.m[i][j] = out.m[i][j] + a * rhs.m[k][j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: [Complex<T>; N]) -> [Complex<T>; N] {
        let mut out = [Complex::new(T::zero(), T::zero()); N];
        for i in 0..N {
            for j in 0..N {
                out[i] = out[i] + self.m[i][j] * v[j];
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = *self;
        for i in 0..N {
            for j in 0..N {
                out.m[i][j] = out.m[i][j] + rhs.m[i][j];
            }
        }
        out
    }

    pub fn scale_re(&self, f: T) -> Self {
        let mut out = *self;
        for i in 0..N {
            for j in 0..N {
                out.m[i][j] = out.m[i][j] * f;
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..N {
            for j in 0..N {
                out.m[i][j] = self.m[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex<T> {
        let mut t = Complex::new(T::zero(), T::zero());
        for i in 0..N {
            t = t + self.m[i][i];
        }
        t
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..N {
            for j in 0..N {
                let d = (self.m[i][j] - rhs.m[i][j]).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
    /// sorted ascending. Callers must pass a (numerically) Hermitian matrix.
    pub fn hermitian_eigenvalues(&self) -> [T; N] {
        let mut a = *self;
        let mut scale = T::zero();
        for i in 0..N {
            for j in 0..N {
                scale = scale.max(a.m[i][j].norm());
            }
        }
        if scale == T::zero() {
            return [T::zero(); N];
        }
        let tol = scale * T::epsilon() * scalar::<T>(10.0);

        for _ in 0..60 {
            let mut off = T::zero();
            for p in 0..N {
                for q in (p + 1)..N {
                    off = off + a.m[p][q].norm_sqr();
                }
            }
            if off.sqrt() <= tol {
                break;
            }
            for p in 0..N {
                for q in (p + 1)..N {
                    let apq = a.m[p][q];
                    let r = apq.norm();
                    if r <= tol * scalar::<T>(0.01) {
                        continue;
                    }
                    let phase = apq / Complex::new(r, T::zero());
                    let app = a.m[p][p].re;
                    let aqq = a.m[q][q].re;
                    let tau = (aqq - app) / (r + r);
                    let t = if tau >= T::zero() {
                        T::one() / (tau + (T::one() + tau * tau).sqrt())
                    } else {
                        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                    };
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let s = t * c;

                    let mut rot = Self::identity();
                    rot.m[p][p] = Complex::new(c, T::zero());
                    rot.m[p][q] = phase * s;
                    rot.m[q][p] = -(phase.conj() * s);
                    rot.m[q][q] = Complex::new(c, T::zero());
                    a = rot.adjoint().mul(&a).mul(&rot);
                }
            }
        }

        let mut ev = [T::zero(); N];
        for i in 0..N {
            ev[i] = a.m[i][i].re;
        }
        ev.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalue NaN"));
        ev
    }
}

impl<T: Real> CMat2<T> {
    /// Kronecker product, ordering (row-major blocks): self acts on the first
    /// qubit, `rhs` on the second.
    pub fn kron(&self, rhs: &CMat2<T>) -> CMat4<T> {
        let mut out = CMat4::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out.m[2 * i + k][2 * j + l] = self.m[i][j] * rhs.m[k][l];
                    }
                }
            }
        }
        out
    }
}
