//! 2-D rasters: images, binary masks, and per-pixel probability maps.

use crate::error::{CoreError, Result};
use crate::tensor::Scalar;

/// Row-major 2-D grid of floating values.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster<T = f32> {
    h: usize,
    w: usize,
    data: Vec<T>,
}

impl<T: Scalar> Raster<T> {
    pub fn zeros(h: usize, w: usize) -> Self {
        Raster {
            h,
            w,
            data: vec![T::zero(); h * w],
        }
    }

    pub fn from_data(h: usize, w: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != h * w {
            return Err(CoreError::Dimension(format!(
                "raster {h}x{w} needs {} values, got {}",
                h * w,
                data.len()
            )));
        }
        Ok(Raster { h, w, data })
    }

    pub fn from_fn(h: usize, w: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(h * w);
        for r in 0..h {
            for c in 0..w {
                data.push(f(r, c));
            }
        }
        Raster { h, w, data }
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn is_square(&self) -> bool {
        self.h == self.w
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r * self.w + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.w + c] = v;
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.w..(r + 1) * self.w]
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Raster {
            h: self.h,
            w: self.w,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// True when every value is exactly 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.data.iter().all(|&v| v == T::zero() || v == T::one())
    }

    pub fn values_in_unit_range(&self) -> bool {
        self.data
            .iter()
            .all(|&v| v.is_finite() && v >= T::zero() && v <= T::one())
    }

    pub fn convert<U: Scalar>(&self) -> Raster<U> {
        Raster {
            h: self.h,
            w: self.w,
            data: self.data.iter().map(|v| U::from_f64(v.to_f64_val())).collect(),
        }
    }

    pub fn same_shape<U: Scalar>(&self, other: &Raster<U>) -> bool {
        self.h == other.h && self.w == other.w
    }
}

/// Per-pixel probability raster; every value lies in [PROB_EPS, 1 - PROB_EPS]
/// when produced by the network, and in [0, 1] always.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbMap {
    raster: Raster<f32>,
}

impl ProbMap {
    pub fn new(raster: Raster<f32>) -> Result<Self> {
        if !raster.values_in_unit_range() {
            return Err(CoreError::Validation(
                "probability map contains values outside [0, 1]".into(),
            ));
        }
        Ok(ProbMap { raster })
    }

    /// Wraps a raster that is known to hold probabilities (e.g. the output of
    /// an exact index permutation or a convex combination of probability maps).
    pub(crate) fn from_raster_unchecked(raster: Raster<f32>) -> Self {
        debug_assert!(raster.values_in_unit_range());
        ProbMap { raster }
    }

    pub fn raster(&self) -> &Raster<f32> {
        &self.raster
    }

    pub fn into_raster(self) -> Raster<f32> {
        self.raster
    }

    pub fn h(&self) -> usize {
        self.raster.h()
    }

    pub fn w(&self) -> usize {
        self.raster.w()
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f32 {
        self.raster.get(r, c)
    }

    pub fn data(&self) -> &[f32] {
        self.raster.data()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_data_checks_size() {
        assert!(Raster::<f32>::from_data(2, 2, vec![0.0; 4]).is_ok());
        assert!(Raster::<f32>::from_data(2, 2, vec![0.0; 3]).is_err());
    }

    #[test]
    fn binary_check() {
        let m = Raster::<f32>::from_data(1, 3, vec![0.0, 1.0, 1.0]).unwrap();
        assert!(m.is_binary());
        let m = Raster::<f32>::from_data(1, 3, vec![0.0, 0.5, 1.0]).unwrap();
        assert!(!m.is_binary());
    }

    #[test]
    fn probmap_rejects_out_of_range() {
        let r = Raster::<f32>::from_data(1, 2, vec![0.2, 1.5]).unwrap();
        assert!(ProbMap::new(r).is_err());
        let r = Raster::<f32>::from_data(1, 2, vec![0.2, 0.9]).unwrap();
        assert!(ProbMap::new(r).is_ok());
    }
}
