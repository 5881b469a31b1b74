//! Affine tangent/cotangent transforms and the metric algebra they induce.
//!
//! Vectors and 1-forms are moved toward a fixed point (the dark field) by a
//! diagonal affinity tensor `K_j = 1 - (1-κ)^{w_j}`. Displacements only
//! rescale the dual frame through the dilation tensor `χ_j = (1-κ)^{z_j}`,
//! which gives the transformed metric two matrix representations depending
//! on whether the observer uses the scaled or the standard dual basis.

use nalgebra::{DMatrix, DVector};

use crate::error::{check_len, GwigError, Result};

pub type Matrix = DMatrix<f64>;
pub type Vector = DVector<f64>;

/// Largest dimension supported by the dense matrix paths.
pub const MAX_DIM: usize = 8;

/// Largest κ accepted as a regular (invertible) state.
pub const KAPPA_MAX: f64 = 1.0 - 1e-12;

fn check_kappa(kappa: f64) -> Result<()> {
    if kappa.is_finite() && (0.0..=KAPPA_MAX).contains(&kappa) {
        Ok(())
    } else {
        Err(GwigError::Domain {
            name: "kappa",
            value: kappa,
            domain: "[0, 1 - 1e-12]",
        })
    }
}

fn check_dim(context: &'static str, d: usize) -> Result<()> {
    if d == 0 || d > MAX_DIM {
        return Err(GwigError::Invalid(format!(
            "{context}: dimension {d} outside 1..={MAX_DIM}"
        )));
    }
    Ok(())
}

fn check_finite(name: &str, xs: &[f64]) -> Result<()> {
    if let Some(x) = xs.iter().find(|x| !x.is_finite()) {
        return Err(GwigError::Invalid(format!("{name} has non-finite entry {x}")));
    }
    Ok(())
}

/// `(1-κ)^p` evaluated through `ln(1-κ)` so that small κ keeps full precision.
fn one_minus_pow(kappa: f64, p: f64) -> f64 {
    (p * (-kappa).ln_1p()).exp()
}

/// Spacetime dilation exponents `z` and field weights `w`, one per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylWeights {
    z: Vec<f64>,
    w: Vec<f64>,
}

impl WeylWeights {
    pub fn new(z: Vec<f64>, w: Vec<f64>) -> Result<Self> {
        check_dim("WeylWeights", z.len())?;
        check_len("WeylWeights (w vs z)", z.len(), w.len())?;
        check_finite("z", &z)?;
        check_finite("w", &w)?;
        Ok(Self { z, w })
    }

    /// `z_j = 1`, `w_j = w` on every axis.
    pub fn isotropic(d: usize, w: f64) -> Result<Self> {
        Self::new(vec![1.0; d], vec![w; d])
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }
}

/// A point of the affinity parameter with its Weyl dilation, `e^{-λ} = 1-κ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DilationScalar {
    kappa: f64,
    lambda: f64,
}

impl DilationScalar {
    pub fn from_kappa(kappa: f64) -> Result<Self> {
        check_kappa(kappa)?;
        Ok(Self {
            kappa,
            lambda: -(-kappa).ln_1p(),
        })
    }

    pub fn from_lambda(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(GwigError::Domain {
                name: "lambda",
                value: lambda,
                domain: "[0, inf)",
            });
        }
        Ok(Self {
            kappa: -(-lambda).exp_m1(),
            lambda,
        })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `1 - κ`, computed as `e^{-λ}`.
    pub fn one_minus_kappa(&self) -> f64 {
        (-self.lambda).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conversion {
    KappaToLambda,
    LambdaToKappa,
}

pub fn kappa_lambda_roundtrip(x: f64, direction: Conversion) -> Result<f64> {
    match direction {
        Conversion::KappaToLambda => {
            // κ = 1 - e^{-λ} is defined on the closed-open interval only.
            if !(x.is_finite() && (0.0..1.0).contains(&x)) {
                return Err(GwigError::Domain {
                    name: "kappa",
                    value: x,
                    domain: "[0, 1)",
                });
            }
            Ok(-(-x).ln_1p())
        }
        Conversion::LambdaToKappa => DilationScalar::from_lambda(x).map(|d| d.kappa()),
    }
}

/// Diagonal affinity tensor `K` together with the fixed point it contracts toward.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineKappaTensor {
    entries: Vec<f64>,
    fixed_point: Vec<f64>,
}

impl AffineKappaTensor {
    pub fn new(kappa: f64, w: &[f64], fixed_point: Vec<f64>) -> Result<Self> {
        check_kappa(kappa)?;
        check_dim("AffineKappaTensor", w.len())?;
        check_len("AffineKappaTensor fixed point", w.len(), fixed_point.len())?;
        check_finite("w", w)?;
        let entries = w.iter().map(|&wj| -(wj * (-kappa).ln_1p()).exp_m1()).collect();
        Ok(Self {
            entries,
            fixed_point,
        })
    }

    /// The κ → 1 limit: every component with a positive weight collapses onto
    /// the fixed point. Only forward evaluation is meaningful for this tensor.
    pub fn collapsed(w: &[f64], fixed_point: Vec<f64>) -> Result<Self> {
        check_dim("AffineKappaTensor", w.len())?;
        check_len("AffineKappaTensor fixed point", w.len(), fixed_point.len())?;
        let entries = w
            .iter()
            .map(|&wj| {
                if wj > 0.0 {
                    Ok(1.0)
                } else if wj == 0.0 {
                    Ok(0.0)
                } else {
                    Err(GwigError::Domain {
                        name: "w_j",
                        value: wj,
                        domain: "[0, inf) in the collapsed limit",
                    })
                }
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            entries,
            fixed_point,
        })
    }

    pub fn from_entries(entries: Vec<f64>, fixed_point: Vec<f64>) -> Result<Self> {
        check_dim("AffineKappaTensor", entries.len())?;
        check_len("AffineKappaTensor fixed point", entries.len(), fixed_point.len())?;
        check_finite("K", &entries)?;
        Ok(Self {
            entries,
            fixed_point,
        })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn fixed_point(&self) -> &[f64] {
        &self.fixed_point
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn forward(&self, v: &[f64]) -> Result<Vec<f64>> {
        check_len("forward_transform", self.dim(), v.len())?;
        Ok(v.iter()
            .zip(&self.entries)
            .zip(&self.fixed_point)
            .map(|((&vj, &k), &fp)| (1.0 - k) * vj + k * fp)
            .collect())
    }

    pub fn inverse(&self, v_hat: &[f64]) -> Result<Vec<f64>> {
        check_len("inverse_transform", self.dim(), v_hat.len())?;
        if let Some(&k) = self.entries.iter().find(|&&k| k >= 1.0) {
            return Err(GwigError::NonInvertible(format!(
                "K_j = {k} collapses the fibre onto the fixed point"
            )));
        }
        Ok(v_hat
            .iter()
            .zip(&self.entries)
            .zip(&self.fixed_point)
            .map(|((&x, &k), &fp)| (x - k * fp) / (1.0 - k))
            .collect())
    }
}

pub fn kappa_tensor(kappa: f64, w: &[f64], fixed_point: Vec<f64>) -> Result<AffineKappaTensor> {
    AffineKappaTensor::new(kappa, w, fixed_point)
}

pub fn forward_transform(v: &[f64], k: &AffineKappaTensor) -> Result<Vec<f64>> {
    k.forward(v)
}

pub fn inverse_transform(v_hat: &[f64], k: &AffineKappaTensor) -> Result<Vec<f64>> {
    k.inverse(v_hat)
}

/// `x ↦ linear · x + offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    pub linear: Matrix,
    pub offset: Vector,
}

impl AffineMap {
    pub fn new(linear: Matrix, offset: Vector) -> Result<Self> {
        if !linear.is_square() {
            return Err(GwigError::Invalid("affine map needs a square linear part".into()));
        }
        check_len("AffineMap offset", linear.nrows(), offset.len())?;
        Ok(Self { linear, offset })
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len("AffineMap::apply", self.dim(), x.len())?;
        let y = &self.linear * Vector::from_column_slice(x) + &self.offset;
        Ok(y.iter().copied().collect())
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &AffineMap) -> Result<AffineMap> {
        check_len("AffineMap::compose", self.dim(), inner.dim())?;
        Ok(AffineMap {
            linear: &self.linear * &inner.linear,
            offset: &self.linear * &inner.offset + &self.offset,
        })
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let inv = self
            .linear
            .clone()
            .try_inverse()
            .ok_or_else(|| GwigError::NonInvertible("singular linear part".into()))?;
        let offset = -(&inv * &self.offset);
        Ok(AffineMap {
            linear: inv,
            offset,
        })
    }
}

fn check_square(name: &'static str, m: &Matrix) -> Result<()> {
    if !m.is_square() {
        return Err(GwigError::Invalid(format!(
            "{name} must be square, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    check_dim(name, m.nrows())
}

fn check_nonsingular(g: &Matrix) -> Result<()> {
    let scale: f64 = g
        .row_iter()
        .map(|r| r.norm())
        .product();
    let det = g.clone().lu().determinant();
    if !(det.is_finite()) || scale == 0.0 || det.abs() <= 1e-14 * scale {
        return Err(GwigError::Singular(format!(
            "metric determinant {det:e} relative to row-norm product {scale:e}"
        )));
    }
    Ok(())
}

pub fn is_symmetric(g: &Matrix, tol: f64) -> bool {
    g.is_square()
        && (0..g.nrows()).all(|i| (0..i).all(|j| (g[(i, j)] - g[(j, i)]).abs() <= tol))
}

/// The map `h` carrying transformed vectors to transformed 1-forms, with the
/// dark 1-form taken as `g(v_d)`.
///
/// `h` is affine: linear part `D g D⁻¹` with `D = diag((1-κ)^{w_j})` and
/// offset `(K g - D g D⁻¹ K) v_d`. Both collapse to `(g, 0)` when the
/// weights coincide or `g` is diagonal.
pub fn induced_metric(g: &Matrix, kappa: f64, w: &[f64], v_d: &[f64]) -> Result<AffineMap> {
    check_square("g", g)?;
    check_len("induced_metric weights", g.nrows(), w.len())?;
    check_len("induced_metric v_d", g.nrows(), v_d.len())?;
    check_kappa(kappa)?;
    check_nonsingular(g)?;

    let k = AffineKappaTensor::new(kappa, w, vec![0.0; w.len()])?;
    let d = g.nrows();
    // D_j = 1 - K_j, evaluated directly to avoid cancellation.
    let diag: Vec<f64> = w.iter().map(|&wj| one_minus_pow(kappa, wj)).collect();

    let linear = Matrix::from_fn(d, d, |i, j| diag[i] * g[(i, j)] / diag[j]);
    let kmat = Matrix::from_diagonal(&Vector::from_column_slice(k.entries()));
    let vd = Vector::from_column_slice(v_d);
    let offset = &kmat * g * &vd - &linear * (&kmat * &vd);
    AffineMap::new(linear, offset)
}

/// Diagonal dilation tensor `χ_j = (1-κ)^{z_j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DilationTensor(Vec<f64>);

impl DilationTensor {
    pub fn diagonal(&self) -> &[f64] {
        &self.0
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_diagonal(&Vector::from_column_slice(&self.0))
    }

    pub fn determinant(&self) -> f64 {
        self.0.iter().product()
    }
}

pub fn dilation_tensor(kappa: f64, z: &[f64]) -> Result<DilationTensor> {
    check_kappa(kappa)?;
    check_dim("dilation tensor", z.len())?;
    check_finite("z", z)?;
    Ok(DilationTensor(
        z.iter().map(|&zj| one_minus_pow(kappa, zj)).collect(),
    ))
}

/// A transformed metric seen by both observers.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricRep {
    pub g: Matrix,
    /// Standard dual basis: `χ_j g_ij`.
    pub g_hat_w: Matrix,
    /// Scaled dual basis: `g_ij / χ_i`.
    pub g_hat_r: Matrix,
}

impl MetricRep {
    /// Rebuilds the Riemannian-observer matrix from the Weylian one through
    /// `e^{Λ_i} (ĝ_W)_ij e^{Λ_j}` and returns the largest deviation.
    pub fn consistency_error(&self, kappa: f64, z: &[f64]) -> Result<f64> {
        let lambda = DilationScalar::from_kappa(kappa)?.lambda();
        let d = self.g.nrows();
        check_len("MetricRep::consistency_error", d, z.len())?;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let rebuilt =
                    (z[i] * lambda).exp() * self.g_hat_w[(i, j)] * (z[j] * lambda).exp();
                let scale = self.g_hat_r[(i, j)].abs().max(1.0);
                worst = worst.max((rebuilt - self.g_hat_r[(i, j)]).abs() / scale);
            }
        }
        Ok(worst)
    }
}

pub fn metric_representations(g: &Matrix, kappa: f64, z: &[f64]) -> Result<MetricRep> {
    check_square("g", g)?;
    check_len("metric_representations z", g.nrows(), z.len())?;
    if !is_symmetric(g, 0.0) {
        return Err(GwigError::Invalid("metric g must be symmetric".into()));
    }
    let chi = dilation_tensor(kappa, z)?;
    let c = chi.diagonal();
    let d = g.nrows();
    Ok(MetricRep {
        g: g.clone(),
        g_hat_w: Matrix::from_fn(d, d, |i, j| c[j] * g[(i, j)]),
        g_hat_r: Matrix::from_fn(d, d, |i, j| g[(i, j)] / c[i]),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observer {
    /// Scaled dual basis `χ^j dx^j`.
    Riemannian,
    /// Standard dual basis `dx^j`.
    Weylian,
}

pub fn observer_pairing(
    alpha_hat: &[f64],
    v_hat: &[f64],
    kappa: f64,
    z: &[f64],
    observer: Observer,
) -> Result<f64> {
    check_len("observer_pairing v_hat", alpha_hat.len(), v_hat.len())?;
    check_len("observer_pairing z", alpha_hat.len(), z.len())?;
    let pairs = alpha_hat.iter().zip(v_hat);
    Ok(match observer {
        Observer::Riemannian => pairs.map(|(a, v)| a * v).sum(),
        Observer::Weylian => {
            let chi = dilation_tensor(kappa, z)?;
            pairs.zip(chi.diagonal()).map(|((a, v), c)| c * a * v).sum()
        }
    })
}

/// `σ = (1-κ)^{-Σz/2}`, so that `σ² |det χ| = 1`.
pub fn dilation_density(kappa: f64, z: &[f64]) -> Result<f64> {
    check_kappa(kappa)?;
    check_finite("z", z)?;
    let total: f64 = z.iter().sum();
    Ok(one_minus_pow(kappa, -0.5 * total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kappa_lambda_examples() {
        assert_eq!(kappa_lambda_roundtrip(0.0, Conversion::KappaToLambda).unwrap(), 0.0);
        assert_eq!(kappa_lambda_roundtrip(0.0, Conversion::LambdaToKappa).unwrap(), 0.0);
        let k = 1.0 - (-5.0f64).exp();
        let l = kappa_lambda_roundtrip(k, Conversion::KappaToLambda).unwrap();
        assert_relative_eq!(l, 5.0, max_relative = 1e-14);
    }

    #[test]
    fn kappa_lambda_domain_errors() {
        for bad in [1.0, 1.5, -0.1, f64::NAN] {
            assert!(kappa_lambda_roundtrip(bad, Conversion::KappaToLambda).is_err());
        }
        assert!(kappa_lambda_roundtrip(-1e-3, Conversion::LambdaToKappa).is_err());
        assert!(DilationScalar::from_kappa(1.0).is_err());
    }

    #[test]
    fn kappa_tensor_examples() {
        let k = kappa_tensor(0.0, &[1.0, 3.0, -2.0], vec![0.0; 3]).unwrap();
        assert_eq!(k.entries(), &[0.0, 0.0, 0.0]);

        let k = kappa_tensor(0.5, &[1.0, 2.0], vec![0.0; 2]).unwrap();
        assert_relative_eq!(k.entries()[0], 0.5, max_relative = 1e-15);
        assert_relative_eq!(k.entries()[1], 0.75, max_relative = 1e-15);

        let k = kappa_tensor(KAPPA_MAX, &[1.0, 2.0], vec![0.0; 2]).unwrap();
        assert!(k.entries()[0] > 1.0 - 1e-11 && k.entries()[0] < 1.0);
        // 1 - 1e-24 is not representable: the entry saturates at 1.
        assert_eq!(k.entries()[1], 1.0);
    }

    #[test]
    fn forward_and_inverse_examples() {
        let k = AffineKappaTensor::from_entries(vec![0.5, 0.5], vec![0.0, 4.0]).unwrap();
        assert_eq!(k.forward(&[2.0, 2.0]).unwrap(), vec![1.0, 3.0]);
        assert_eq!(k.inverse(&[1.0, 3.0]).unwrap(), vec![2.0, 2.0]);

        let id = AffineKappaTensor::from_entries(vec![0.0, 0.0], vec![7.0, -1.0]).unwrap();
        assert_eq!(id.forward(&[2.0, -3.0]).unwrap(), vec![2.0, -3.0]);
        assert_eq!(id.inverse(&[2.0, -3.0]).unwrap(), vec![2.0, -3.0]);
    }

    #[test]
    fn collapsed_tensor_maps_everything_to_fixed_point() {
        let k = AffineKappaTensor::collapsed(&[1.0, 2.0], vec![0.3, -4.0]).unwrap();
        assert_eq!(k.forward(&[10.0, 11.0]).unwrap(), vec![0.3, -4.0]);
        assert!(matches!(
            k.inverse(&[0.3, -4.0]),
            Err(GwigError::NonInvertible(_))
        ));
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let k = AffineKappaTensor::from_entries(vec![0.5, 0.5], vec![0.0, 4.0]).unwrap();
        assert!(matches!(k.forward(&[1.0]), Err(GwigError::Shape { .. })));
    }

    #[test]
    fn induced_metric_matrix_oracle() {
        // D g D⁻¹ with D = diag(0.5, 0.25), composed by hand.
        let g = Matrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let h = induced_metric(&g, 0.5, &[1.0, 2.0], &[0.0, 0.0]).unwrap();
        let expected = Matrix::from_row_slice(2, 2, &[2.0, 2.0, 0.5, 2.0]);
        assert_relative_eq!(h.linear, expected, max_relative = 1e-15);
        assert_eq!(h.offset.norm(), 0.0);
    }

    #[test]
    fn induced_metric_rejects_singular_g() {
        let g = Matrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(
            induced_metric(&g, 0.3, &[1.0, 2.0], &[0.0, 0.0]),
            Err(GwigError::Singular(_))
        ));
    }

    #[test]
    fn dilation_tensor_examples() {
        assert_eq!(dilation_tensor(0.0, &[1.0, 2.0]).unwrap().diagonal(), &[1.0, 1.0]);
        let chi = dilation_tensor(0.75, &[1.0, 2.0]).unwrap();
        assert_relative_eq!(chi.diagonal()[0], 0.25, max_relative = 1e-15);
        assert_relative_eq!(chi.diagonal()[1], 0.0625, max_relative = 1e-15);
        let chi = dilation_tensor(KAPPA_MAX, &[1.0, 2.0]).unwrap();
        assert!(chi.diagonal().iter().all(|&c| c < 1.1e-12));
    }

    #[test]
    fn metric_representation_examples() {
        let g = Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let rep = metric_representations(&g, 0.5, &[1.0, 1.0]).unwrap();
        assert_relative_eq!(
            rep.g_hat_w,
            Matrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, -0.5]),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            rep.g_hat_r,
            Matrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, -2.0]),
            max_relative = 1e-15
        );

        let rep0 = metric_representations(&g, 0.0, &[1.0, 3.0]).unwrap();
        assert_eq!(rep0.g_hat_w, g);
        assert_eq!(rep0.g_hat_r, g);
    }

    #[test]
    fn classical_weyl_metric_at_weight_two() {
        let g = Matrix::from_row_slice(3, 3, &[2.0, 0.3, 0.1, 0.3, -1.0, 0.2, 0.1, 0.2, -1.5]);
        let lambda = 0.7;
        let kappa = DilationScalar::from_lambda(lambda).unwrap().kappa();
        let rep = metric_representations(&g, kappa, &[2.0; 3]).unwrap();
        assert_relative_eq!(rep.g_hat_w, &g * (-2.0 * lambda).exp(), max_relative = 1e-14);
    }

    #[test]
    fn metric_representations_rejects_asymmetric() {
        let g = Matrix::from_row_slice(2, 2, &[1.0, 0.1, 0.2, 1.0]);
        assert!(metric_representations(&g, 0.1, &[1.0, 1.0]).is_err());
    }

    #[test]
    fn observer_pairing_examples() {
        let r = observer_pairing(&[1.0, 1.0], &[1.0, 1.0], 0.75, &[1.0, 1.0], Observer::Riemannian)
            .unwrap();
        let w = observer_pairing(&[1.0, 1.0], &[1.0, 1.0], 0.75, &[1.0, 1.0], Observer::Weylian)
            .unwrap();
        assert_eq!(r, 2.0);
        assert_relative_eq!(w, 0.5, max_relative = 1e-15);

        let a = [0.3, -1.2, 2.0];
        let v = [1.5, 0.4, -0.7];
        let z = [1.0, 2.0, 0.5];
        assert_eq!(
            observer_pairing(&a, &v, 0.0, &z, Observer::Riemannian).unwrap(),
            observer_pairing(&a, &v, 0.0, &z, Observer::Weylian).unwrap()
        );
        let near = observer_pairing(&a, &v, KAPPA_MAX, &z, Observer::Weylian).unwrap();
        assert!(near.abs() < 1e-5);
    }

    #[test]
    fn dilation_density_examples() {
        assert_eq!(dilation_density(0.0, &[1.0; 4]).unwrap(), 1.0);
        assert_relative_eq!(dilation_density(0.75, &[1.0; 4]).unwrap(), 16.0, max_relative = 1e-14);
    }

    #[test]
    fn affine_map_inverse_and_compose() {
        let m = AffineMap::new(
            Matrix::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 3.0]),
            Vector::from_column_slice(&[1.0, -1.0]),
        )
        .unwrap();
        let id = m.compose(&m.inverse().unwrap()).unwrap();
        assert_relative_eq!(id.linear, Matrix::identity(2, 2), epsilon = 1e-15);
        assert_relative_eq!(id.offset.norm(), 0.0, epsilon = 1e-15);
    }
}
