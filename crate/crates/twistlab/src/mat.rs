//! Small square matrices, generic over the scalar ring.

use crate::poly::Ring;
use crate::{Int, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T: Ring, const N: usize> {
    pub e: [[T; N]; N],
}

impl<T: Ring, const N: usize> Matrix<T, N> {
    pub fn from_rows(e: [[T; N]; N]) -> Self {
        Matrix { e }
    }

    pub fn zero() -> Self {
        Matrix {
            e: std::array::from_fn(|_| std::array::from_fn(|_| T::zero())),
        }
    }

    pub fn identity() -> Self {
        Matrix {
            e: std::array::from_fn(|i| {
                std::array::from_fn(|j| if i == j { T::one() } else { T::zero() })
            }),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..N {
            for j in 0..N {
                let mut acc = T::zero();
                for (k, a) in self.e[i].iter().enumerate() {
                    acc = acc + a.clone() * rhs.e[k][j].clone();
                }
                out.e[i][j] = acc;
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Matrix {
            e: std::array::from_fn(|i| std::array::from_fn(|j| -self.e[i][j].clone())),
        }
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..N {
            acc = acc + self.e[i][i].clone();
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self == &Self::identity()
    }
}

impl<const N: usize> Matrix<Rat, N> {
    /// det(1 - M T) as an integer polynomial, via traces of powers and
    /// inverse Newton. Asserts integrality (true whenever M has finite order,
    /// since the coefficients are then symmetric functions of roots of unity
    /// that are rational).
    pub fn reciprocal_charpoly(&self) -> crate::IntPoly {
        let mut power = self.clone();
        let mut traces = Vec::with_capacity(N);
        for _ in 0..N {
            traces.push(power.trace());
            power = power.mul(self);
        }
        let p = crate::poly::from_power_sums(&traces, N);
        p.to_int()
            .expect("det(1 - MT) of a finite-order rational matrix is integral")
    }
}

impl<T: Ring + std::fmt::Display, const N: usize> std::fmt::Debug for Matrix<T, N> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for row in &self.e {
            let cells: Vec<String> = row.iter().map(|c| format!("{c}")).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Convenience: build a rational matrix from i64 entries.
pub fn mat4_from_i64(rows: [[i64; 4]; 4]) -> Matrix<Rat, 4> {
    Matrix {
        e: rows.map(|r| r.map(|v| Rat::from_integer(Int::from(v)))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_simple_matrices() {
        let id: Matrix<Rat, 4> = Matrix::identity();
        // det(1 - T)^4 = (1 - T)^4
        let p = id.reciprocal_charpoly();
        assert_eq!(p, crate::IntPoly::from_i64(&[1, -1]).pow(4));
        let m = id.neg();
        assert_eq!(m.reciprocal_charpoly(), crate::IntPoly::from_i64(&[1, 1]).pow(4));
        // diag(1,1,-1,-1): (1-T)^2 (1+T)^2 = (1 - T^2)^2
        let d = mat4_from_i64([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]);
        assert_eq!(d.reciprocal_charpoly(), crate::IntPoly::from_i64(&[1, 0, -1]).pow(2));
    }

    #[test]
    fn mul_and_trace() {
        let a = mat4_from_i64([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]);
        assert!(a.mul(&a).is_identity());
        assert_eq!(a.trace(), Rat::from_integer(Int::from(0)));
    }
}
