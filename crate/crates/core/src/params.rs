//! Named, ordered weight collections — the snapshot unit every ensembling
//! method manipulates.

use crate::error::{CoreError, Result};
use crate::tensor::{Scalar, Tensor};

/// Ordered list of named weight tensors plus a fingerprint of the layer
/// shapes. Two ParamSets may be averaged, differenced, or stepped together
/// only when their fingerprints match.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSet<T = f32> {
    entries: Vec<(String, Tensor<T>)>,
    fingerprint: u64,
}

/// FNV-1a over the entry names and dims. Values and seeds do not contribute:
/// the fingerprint identifies the architecture only.
fn shape_fingerprint<T: Scalar>(entries: &[(String, Tensor<T>)]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |b: u8| {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    };
    for (name, tensor) in entries {
        for &b in name.as_bytes() {
            eat(b);
        }
        eat(0);
        eat(tensor.dims().len() as u8);
        for &d in tensor.dims() {
            for b in (d as u32).to_le_bytes() {
                eat(b);
            }
        }
    }
    h
}

impl<T: Scalar> ParamSet<T> {
    pub fn new(entries: Vec<(String, Tensor<T>)>) -> Result<Self> {
        for (i, (name, _)) in entries.iter().enumerate() {
            if entries[..i].iter().any(|(n, _)| n == name) {
                return Err(CoreError::Validation(format!(
                    "duplicate parameter name {name:?}"
                )));
            }
        }
        let fingerprint = shape_fingerprint(&entries);
        Ok(ParamSet {
            entries,
            fingerprint,
        })
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(String, Tensor<T>)] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&Tensor<T>> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
    }

    pub fn get_mut(&mut self, name: &str) -> Option<&mut Tensor<T>> {
        self.entries
            .iter_mut()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
    }

    /// Total number of scalar parameters.
    pub fn n_values(&self) -> usize {
        self.entries.iter().map(|(_, t)| t.len()).sum()
    }

    pub fn check_combinable(&self, other: &Self, context: &str) -> Result<()> {
        if self.fingerprint != other.fingerprint {
            return Err(CoreError::Combinability {
                left: self.fingerprint,
                right: other.fingerprint,
                context: context.into(),
            });
        }
        Ok(())
    }

    /// Same shapes, all values zero.
    pub fn zeros_like(&self) -> Self {
        ParamSet {
            entries: self
                .entries
                .iter()
                .map(|(n, t)| (n.clone(), Tensor::zeros(t.dims())))
                .collect(),
            fingerprint: self.fingerprint,
        }
    }

    /// Elementwise combination of two combinable sets.
    pub fn zip_map(&self, other: &Self, context: &str, f: impl Fn(T, T) -> T) -> Result<Self> {
        self.check_combinable(other, context)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|((n, a), (_, b))| Ok((n.clone(), a.zip_map(b, &f)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ParamSet {
            entries,
            fingerprint: self.fingerprint,
        })
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        ParamSet {
            entries: self
                .entries
                .iter()
                .map(|(n, t)| (n.clone(), t.map(&f)))
                .collect(),
            fingerprint: self.fingerprint,
        }
    }

    /// Euclidean distance between two combinable weight sets.
    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        self.check_combinable(other, "l2_distance")?;
        let mut sum = 0.0f64;
        for ((_, a), (_, b)) in self.entries.iter().zip(&other.entries) {
            for (&x, &y) in a.iter().zip(b.iter()) {
                let d = x.to_f64_val() - y.to_f64_val();
                sum += d * d;
            }
        }
        Ok(sum.sqrt())
    }

    pub fn has_non_finite(&self) -> bool {
        self.entries.iter().any(|(_, t)| t.has_non_finite())
    }

    pub fn convert<U: Scalar>(&self) -> ParamSet<U> {
        let entries: Vec<(String, Tensor<U>)> = self
            .entries
            .iter()
            .map(|(n, t)| (n.clone(), t.convert()))
            .collect();
        let fingerprint = shape_fingerprint(&entries);
        ParamSet {
            entries,
            fingerprint,
        }
    }

    /// Flat view of every value, in entry order. Used by gradient checks.
    pub fn flat_values(&self) -> Vec<T> {
        self.entries
            .iter()
            .flat_map(|(_, t)| t.data().iter().copied())
            .collect()
    }

    /// Mutable access to the i-th scalar in entry order.
    pub fn flat_value_mut(&mut self, mut index: usize) -> Option<&mut T> {
        for (_, t) in &mut self.entries {
            if index < t.len() {
                return Some(&mut t.data_mut()[index]);
            }
            index -= t.len();
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(dims: &[usize], fill: f32) -> Tensor<f32> {
        Tensor::from_data(dims, vec![fill; dims.iter().product()]).unwrap()
    }

    fn sample(fill: f32) -> ParamSet<f32> {
        ParamSet::new(vec![
            ("a.weight".into(), named(&[2, 3], fill)),
            ("a.bias".into(), named(&[2], fill)),
        ])
        .unwrap()
    }

    #[test]
    fn fingerprint_is_shape_only() {
        assert_eq!(sample(0.0).fingerprint(), sample(5.0).fingerprint());
    }

    #[test]
    fn fingerprint_tracks_shapes_and_names() {
        let a = sample(0.0);
        let b = ParamSet::new(vec![
            ("a.weight".into(), named(&[3, 2], 0.0)),
            ("a.bias".into(), named(&[2], 0.0)),
        ])
        .unwrap();
        let c = ParamSet::new(vec![
            ("b.weight".into(), named(&[2, 3], 0.0)),
            ("a.bias".into(), named(&[2], 0.0)),
        ])
        .unwrap();
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_ne!(a.fingerprint(), c.fingerprint());
    }

    #[test]
    fn duplicate_names_rejected() {
        let r = ParamSet::new(vec![
            ("w".into(), named(&[1], 0.0)),
            ("w".into(), named(&[1], 0.0)),
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn zip_map_requires_combinable() {
        let a = sample(1.0);
        let b = ParamSet::new(vec![("other".into(), named(&[1], 0.0))]).unwrap();
        assert!(matches!(
            a.zip_map(&b, "test", |x, y| x + y),
            Err(CoreError::Combinability { .. })
        ));
        let sum = a.zip_map(&sample(2.0), "test", |x, y| x + y).unwrap();
        assert!(sum.flat_values().iter().all(|&v| v == 3.0));
    }

    #[test]
    fn l2_distance_matches_hand_value() {
        let a = sample(0.0);
        let b = sample(2.0);
        // 8 values differing by 2 -> sqrt(8 * 4)
        assert!((a.l2_distance(&b).unwrap() - 32f64.sqrt()).abs() < 1e-12);
    }
}
