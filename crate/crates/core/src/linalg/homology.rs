//! Homology `ker(d_out) / im(d_in)` of a three-term complex, with class coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::fp::{reduce_big, FpMatrix};
use super::{snf, Coefficients, GroupPresentation, IntMatrix, LinalgError};

/// Homology at the middle term of `C_prev --d_in--> C --d_out--> C_next`.
#[derive(Clone, Debug)]
pub enum Homology {
    Integral(IntegralHomology),
    Modular(ModularHomology),
}

#[derive(Clone, Debug)]
pub struct IntegralHomology {
    d_out: IntMatrix,
    /// First `kernel_start` coordinates of `right_inverse · x` vanish on cycles.
    kernel_start: usize,
    right: IntMatrix,
    right_inverse: IntMatrix,
    quotient_left: IntMatrix,
    quotient_left_inverse: IntMatrix,
    /// Full diagonal of the image-in-kernel SNF, including unit factors.
    factors: Vec<BigInt>,
    kernel_dim: usize,
}

#[derive(Clone, Debug)]
pub struct ModularHomology {
    p: u64,
    d_out: FpMatrix,
    /// Columns: image basis followed by complement representatives.
    frame: FpMatrix,
    image_dim: usize,
}

fn check_shapes(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<(), LinalgError> {
    if d_in.rows() != d_out.cols() {
        return Err(LinalgError::ShapeMismatch {
            left: (d_out.rows(), d_out.cols()),
            right: (d_in.rows(), d_in.cols()),
        });
    }
    Ok(())
}

impl Homology {
    pub fn compute(
        d_in: &IntMatrix,
        d_out: &IntMatrix,
        coefficients: Coefficients,
    ) -> Result<Homology, LinalgError> {
        check_shapes(d_in, d_out)?;
        match coefficients {
            Coefficients::Integers => {
                if !d_out.mul(d_in).is_zero() {
                    return Err(LinalgError::CompositionNotZero);
                }
                Ok(Homology::Integral(IntegralHomology::new(d_in, d_out)))
            }
            Coefficients::Field(p) => {
                let fin = FpMatrix::from_int(d_in, p);
                let fout = FpMatrix::from_int(d_out, p);
                Self::compute_fp(&fin, &fout)
            }
        }
    }

    pub fn compute_fp(d_in: &FpMatrix, d_out: &FpMatrix) -> Result<Homology, LinalgError> {
        if d_in.rows() != d_out.cols() {
            return Err(LinalgError::ShapeMismatch {
                left: (d_out.rows(), d_out.cols()),
                right: (d_in.rows(), d_in.cols()),
            });
        }
        if !d_out.mul(d_in).is_zero() {
            return Err(LinalgError::CompositionNotZero);
        }
        Ok(Homology::Modular(ModularHomology::new(d_in, d_out)))
    }

    pub fn presentation(&self) -> GroupPresentation {
        match self {
            Homology::Integral(h) => h.presentation(),
            Homology::Modular(h) => GroupPresentation::field(h.p, h.dim()),
        }
    }

    pub fn coefficients(&self) -> Coefficients {
        match self {
            Homology::Integral(_) => Coefficients::Integers,
            Homology::Modular(h) => Coefficients::Field(h.p),
        }
    }

    /// Coordinates of the class of `x` against the presentation generators
    /// (torsion generators first, then free ones). `None` if `x` is not a cycle.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        match self {
            Homology::Integral(h) => h.coordinates(x),
            Homology::Modular(h) => {
                let v: Vec<u64> = x.iter().map(|a| reduce_big(a, h.p)).collect();
                h.coordinates(&v).map(|c| c.into_iter().map(BigInt::from).collect())
            }
        }
    }

    pub fn is_zero_class(&self, x: &[BigInt]) -> Option<bool> {
        self.coordinates(x).map(|c| c.iter().all(Zero::is_zero))
    }

    /// A cycle representing the `k`-th generator.
    pub fn representative(&self, k: usize) -> Vec<BigInt> {
        match self {
            Homology::Integral(h) => h.representative(k),
            Homology::Modular(h) => {
                h.frame.column(h.image_dim + k).into_iter().map(BigInt::from).collect()
            }
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Homology::Integral(h) => h.presentation().generator_count(),
            Homology::Modular(h) => h.dim(),
        }
    }
}

impl IntegralHomology {
    fn new(d_in: &IntMatrix, d_out: &IntMatrix) -> Self {
        let out = snf(d_out);
        let r = out.rank();
        let n = d_out.cols();
        // image of d_in in kernel coordinates
        let coords = out.right_inverse.mul(d_in).row_slice(r, n);
        let q = snf(&coords);
        let mut factors = q.invariant_factors.clone();
        factors.resize(n - r, BigInt::zero());
        IntegralHomology {
            d_out: d_out.clone(),
            kernel_start: r,
            right: out.right,
            right_inverse: out.right_inverse,
            quotient_left: q.left,
            quotient_left_inverse: q.left_inverse,
            factors,
            kernel_dim: n - r,
        }
    }

    /// Indices (into `factors`) of the generators of the quotient, in
    /// presentation order: nontrivial torsion, then free.
    fn generator_slots(&self) -> Vec<usize> {
        let torsion = self.factors.iter().enumerate().filter(|(_, f)| !f.is_zero() && !f.is_one());
        let free = self.factors.iter().enumerate().filter(|(_, f)| f.is_zero());
        torsion.chain(free).map(|(i, _)| i).collect()
    }

    fn presentation(&self) -> GroupPresentation {
        let torsion: Vec<BigInt> =
            self.factors.iter().filter(|f| !f.is_zero() && !f.is_one()).cloned().collect();
        let free = self.factors.iter().filter(|f| f.is_zero()).count();
        debug_assert_eq!(self.factors.len(), self.kernel_dim);
        GroupPresentation::integral(free, torsion)
    }

    fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        if x.len() != self.d_out.cols() || self.d_out.mul_vec(x).iter().any(|v| !v.is_zero()) {
            return None;
        }
        let y = self.right_inverse.mul_vec(x);
        let ker = &y[self.kernel_start..];
        let z = self.quotient_left.mul_vec(ker);
        Some(
            self.generator_slots()
                .into_iter()
                .map(|i| {
                    let f = &self.factors[i];
                    if f.is_zero() {
                        z[i].clone()
                    } else {
                        z[i].mod_floor(f)
                    }
                })
                .collect(),
        )
    }

    fn representative(&self, k: usize) -> Vec<BigInt> {
        let slot = self.generator_slots()[k];
        let mut e = vec![BigInt::zero(); self.kernel_dim];
        e[slot] = BigInt::one();
        let y = self.quotient_left_inverse.mul_vec(&e);
        let basis = self.right.col_slice(self.kernel_start, self.kernel_start + self.kernel_dim);
        basis.mul_vec(&y)
    }

    /// Additive order of the class of a cycle; `None` means infinite order.
    pub fn order(&self, x: &[BigInt]) -> Option<Option<BigInt>> {
        let coords = self.coordinates(x)?;
        let slots = self.generator_slots();
        let mut order = BigInt::one();
        for (c, &slot) in coords.iter().zip(&slots) {
            if c.is_zero() {
                continue;
            }
            let f = &self.factors[slot];
            if f.is_zero() {
                return Some(None);
            }
            order = order.lcm(&(f / c.gcd(f)));
        }
        Some(Some(order))
    }
}

impl ModularHomology {
    fn new(d_in: &FpMatrix, d_out: &FpMatrix) -> Self {
        let p = d_in.prime();
        let n = d_out.cols();
        let image: Vec<Vec<u64>> = {
            let e = d_in.echelon();
            e.pivots.iter().map(|&c| d_in.column(c)).collect()
        };
        let kernel = d_out.kernel();
        let mut candidates = image.clone();
        candidates.extend(kernel.iter().cloned());
        let e = FpMatrix::from_columns(p, n, &candidates).echelon();
        let reps: Vec<Vec<u64>> = e
            .pivots
            .iter()
            .filter(|&&c| c >= image.len())
            .map(|&c| candidates[c].clone())
            .collect();
        let mut frame_cols = image.clone();
        frame_cols.extend(reps);
        ModularHomology {
            p,
            d_out: d_out.clone(),
            frame: FpMatrix::from_columns(p, n, &frame_cols),
            image_dim: image.len(),
        }
    }

    pub fn dim(&self) -> usize {
        self.frame.cols() - self.image_dim
    }

    pub fn coordinates(&self, x: &[u64]) -> Option<Vec<u64>> {
        if x.len() != self.d_out.cols() || self.d_out.mul_vec(x).iter().any(|&v| v != 0) {
            return None;
        }
        let c = self.frame.solve(x).expect("cycle lies in the span of the frame");
        Some(c[self.image_dim..].to_vec())
    }
}

/// `ker(d_out) / im(d_in)` over the chosen coefficients.
pub fn homology_at(
    d_in: &IntMatrix,
    d_out: &IntMatrix,
    coefficients: Coefficients,
) -> Result<GroupPresentation, LinalgError> {
    Ok(Homology::compute(d_in, d_out, coefficients)?.presentation())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn cokernel_of_multiplication() {
        // Z --k--> Z --0--> 0 : Z/k
        for k in [2i64, 3, 6] {
            let g = homology_at(&m(&[vec![k]]), &IntMatrix::zeros(0, 1), Coefficients::Integers)
                .unwrap();
            assert_eq!(g, GroupPresentation::integral(0, vec![BigInt::from(k)]));
        }
    }

    #[test]
    fn zero_maps_one_generator() {
        let g = homology_at(&IntMatrix::zeros(1, 0), &IntMatrix::zeros(0, 1), Coefficients::Integers)
            .unwrap();
        assert_eq!(g, GroupPresentation::integral(1, vec![]));
    }

    #[test]
    fn mod_p_kills_multiplication_by_p() {
        let g = homology_at(&m(&[vec![5]]), &IntMatrix::zeros(1, 1), Coefficients::Field(5)).unwrap();
        assert_eq!(g, GroupPresentation::field(5, 1));
    }

    #[test]
    fn composition_checked() {
        let err = homology_at(&m(&[vec![1]]), &m(&[vec![1]]), Coefficients::Integers).unwrap_err();
        assert!(matches!(err, LinalgError::CompositionNotZero));
        let ok = homology_at(&m(&[vec![3]]), &m(&[vec![3]]), Coefficients::Field(3));
        assert!(ok.is_ok());
    }

    #[test]
    fn class_orders() {
        // Z^2 / <(2, 4)> has the class of (1, 2) of order 2 and (0, 1) of infinite order
        let h = Homology::compute(&m(&[vec![2], vec![4]]), &IntMatrix::zeros(0, 2), Coefficients::Integers)
            .unwrap();
        let Homology::Integral(ih) = &h else { unreachable!() };
        let v = |a: i64, b: i64| vec![BigInt::from(a), BigInt::from(b)];
        assert_eq!(ih.order(&v(1, 2)), Some(Some(BigInt::from(2))));
        assert_eq!(ih.order(&v(0, 1)), Some(None));
        assert_eq!(ih.order(&v(2, 4)), Some(Some(BigInt::one())));
        for k in 0..h.rank() {
            assert!(h.coordinates(&h.representative(k)).is_some());
        }
    }
}
