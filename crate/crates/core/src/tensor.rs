//! Dense row-major tensors holding network weights and activations.

use crate::error::{CoreError, Result};
use num_traits::Float;
use std::fmt;

/// Floating-point element type the network can run in. f32 is the working
/// precision for training and prediction; f64 is used by gradient checks.
pub trait Scalar: Float + fmt::Debug + Send + Sync + 'static {
    /// Probability clamp bound: network outputs stay in [EPS, 1 - EPS].
    const PROB_EPS: Self;

    fn from_f64(v: f64) -> Self;
    fn to_f64_val(self) -> f64;
}

impl Scalar for f32 {
    const PROB_EPS: f32 = 1e-6;

    fn from_f64(v: f64) -> f32 {
        v as f32
    }

    fn to_f64_val(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    const PROB_EPS: f64 = 1e-12;

    fn from_f64(v: f64) -> f64 {
        v
    }

    fn to_f64_val(self) -> f64 {
        self
    }
}

/// N-dimensional row-major tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<T = f32> {
    dims: Vec<usize>,
    data: Vec<T>,
}

impl<T: Scalar> Tensor<T> {
    pub fn zeros(dims: &[usize]) -> Self {
        let len = dims.iter().product();
        Tensor {
            dims: dims.to_vec(),
            data: vec![T::zero(); len],
        }
    }

    pub fn from_data(dims: &[usize], data: Vec<T>) -> Result<Self> {
        let expect: usize = dims.iter().product();
        if expect != data.len() {
            return Err(CoreError::Dimension(format!(
                "tensor dims {:?} imply {} elements, got {}",
                dims,
                expect,
                data.len()
            )));
        }
        if dims.iter().any(|&d| d == 0) {
            return Err(CoreError::Dimension(format!(
                "tensor dims {dims:?} contain a zero extent"
            )));
        }
        Ok(Tensor {
            dims: dims.to_vec(),
            data,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.data.iter()
    }

    /// Elementwise combine; shapes must match.
    pub fn zip_map(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        if self.dims != other.dims {
            return Err(CoreError::Dimension(format!(
                "tensor shape mismatch: {:?} vs {:?}",
                self.dims, other.dims
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Tensor {
            dims: self.dims.clone(),
            data,
        })
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Tensor {
            dims: self.dims.clone(),
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn has_non_finite(&self) -> bool {
        self.data.iter().any(|v| !v.is_finite())
    }

    pub fn convert<U: Scalar>(&self) -> Tensor<U> {
        Tensor {
            dims: self.dims.clone(),
            data: self.data.iter().map(|v| U::from_f64(v.to_f64_val())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_data_validates_length() {
        assert!(Tensor::<f32>::from_data(&[2, 3], vec![0.0; 6]).is_ok());
        assert!(Tensor::<f32>::from_data(&[2, 3], vec![0.0; 5]).is_err());
        assert!(Tensor::<f32>::from_data(&[2, 0], vec![]).is_err());
    }

    #[test]
    fn zip_map_rejects_shape_mismatch() {
        let a = Tensor::<f32>::zeros(&[2, 2]);
        let b = Tensor::<f32>::zeros(&[4]);
        assert!(a.zip_map(&b, |x, y| x + y).is_err());
    }

    #[test]
    fn convert_round_trips_f32() {
        let a = Tensor::<f32>::from_data(&[3], vec![0.5, -1.25, 3.0]).unwrap();
        let b: Tensor<f64> = a.convert();
        let c: Tensor<f32> = b.convert();
        assert_eq!(a, c);
    }
}
