//! Binary file formats.
//!
//! Weight snapshots (`.ensw`): magic `ENSW`, version u32 = 1, tensor count
//! u32, then per tensor: name length u16 + UTF-8 name, ndim u8, dims
//! u32 x ndim, raw 32-bit little-endian floats. All integers little-endian.
//!
//! Rasters (`.ensr`): magic `ENSR`, version u32 = 1, H u32, W u32, row-major
//! 32-bit little-endian floats.

use crate::error::{CoreError, Result};
use crate::params::ParamSet;
use crate::raster::Raster;
use crate::tensor::Tensor;
use std::path::Path;

const ENSW_MAGIC: &[u8; 4] = b"ENSW";
const ENSR_MAGIC: &[u8; 4] = b"ENSR";
const FORMAT_VERSION: u32 = 1;

/// Cursor over a byte buffer that reports the failing offset on truncation.
struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    fn fail(&self, reason: impl Into<String>) -> CoreError {
        CoreError::Format {
            offset: self.pos as u64,
            reason: reason.into(),
        }
    }

    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        if self.pos + n > self.buf.len() {
            return Err(self.fail(format!(
                "truncated file: needed {n} bytes for {what}, {} left",
                self.buf.len() - self.pos
            )));
        }
        let slice = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn u8(&mut self, what: &str) -> Result<u8> {
        Ok(self.take(1, what)?[0])
    }

    fn u16(&mut self, what: &str) -> Result<u16> {
        let b = self.take(2, what)?;
        Ok(u16::from_le_bytes([b[0], b[1]]))
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        let b = self.take(4, what)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn f32_vec(&mut self, count: usize, what: &str) -> Result<Vec<f32>> {
        let b = self.take(count * 4, what)?;
        Ok(b.chunks_exact(4)
            .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect())
    }

    fn expect_done(&mut self) -> Result<()> {
        if self.pos != self.buf.len() {
            return Err(self.fail(format!(
                "{} trailing bytes after payload",
                self.buf.len() - self.pos
            )));
        }
        Ok(())
    }
}

fn check_header(r: &mut Reader<'_>, magic: &[u8; 4]) -> Result<()> {
    let got = r.take(4, "magic")?;
    if got != magic {
        return Err(CoreError::Format {
            offset: 0,
            reason: format!(
                "bad magic: expected {:?}, got {:?}",
                String::from_utf8_lossy(magic),
                String::from_utf8_lossy(got)
            ),
        });
    }
    let at = r.pos as u64;
    let version = r.u32("version")?;
    if version != FORMAT_VERSION {
        return Err(CoreError::Format {
            offset: at,
            reason: format!("unsupported version {version}, expected {FORMAT_VERSION}"),
        });
    }
    Ok(())
}

pub fn encode_params(params: &ParamSet<f32>) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(ENSW_MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&(params.len() as u32).to_le_bytes());
    for (name, tensor) in params.entries() {
        out.extend_from_slice(&(name.len() as u16).to_le_bytes());
        out.extend_from_slice(name.as_bytes());
        out.push(tensor.dims().len() as u8);
        for &d in tensor.dims() {
            out.extend_from_slice(&(d as u32).to_le_bytes());
        }
        for &v in tensor.data() {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    out
}

pub fn decode_params(buf: &[u8]) -> Result<ParamSet<f32>> {
    let mut r = Reader::new(buf);
    check_header(&mut r, ENSW_MAGIC)?;
    let count = r.u32("tensor count")?;
    let mut entries = Vec::with_capacity(count as usize);
    for i in 0..count {
        let name_len = r.u16("name length")? as usize;
        let at = r.pos as u64;
        let name = std::str::from_utf8(r.take(name_len, "name")?)
            .map_err(|_| CoreError::Format {
                offset: at,
                reason: format!("tensor {i}: name is not UTF-8"),
            })?
            .to_string();
        let ndim = r.u8("ndim")? as usize;
        let mut dims = Vec::with_capacity(ndim);
        for _ in 0..ndim {
            dims.push(r.u32("dim")? as usize);
        }
        let len: usize = dims.iter().product();
        let data = r.f32_vec(len, &format!("data of {name:?}"))?;
        entries.push((name, Tensor::from_data(&dims, data)?));
    }
    r.expect_done()?;
    ParamSet::new(entries)
}

pub fn save_params(params: &ParamSet<f32>, path: &Path) -> Result<()> {
    std::fs::write(path, encode_params(params))
        .map_err(|e| CoreError::io(path.display().to_string(), e))
}

pub fn load_params(path: &Path) -> Result<ParamSet<f32>> {
    let buf = std::fs::read(path).map_err(|e| CoreError::io(path.display().to_string(), e))?;
    decode_params(&buf)
}

pub fn encode_raster(raster: &Raster<f32>) -> Vec<u8> {
    let mut out = Vec::with_capacity(16 + raster.data().len() * 4);
    out.extend_from_slice(ENSR_MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&(raster.h() as u32).to_le_bytes());
    out.extend_from_slice(&(raster.w() as u32).to_le_bytes());
    for &v in raster.data() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_raster(buf: &[u8]) -> Result<Raster<f32>> {
    let mut r = Reader::new(buf);
    check_header(&mut r, ENSR_MAGIC)?;
    let h = r.u32("height")? as usize;
    let w = r.u32("width")? as usize;
    let data = r.f32_vec(h * w, "raster data")?;
    r.expect_done()?;
    Raster::from_data(h, w, data)
}

pub fn save_raster(raster: &Raster<f32>, path: &Path) -> Result<()> {
    std::fs::write(path, encode_raster(raster))
        .map_err(|e| CoreError::io(path.display().to_string(), e))
}

pub fn load_raster(path: &Path) -> Result<Raster<f32>> {
    let buf = std::fs::read(path).map_err(|e| CoreError::io(path.display().to_string(), e))?;
    decode_raster(&buf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn arbitrary_params(seed: u64) -> ParamSet<f32> {
        let mut rng = SplitMix64::new(seed);
        let entries = vec![
            (
                "enc0.conv1.weight".to_string(),
                Tensor::from_data(
                    &[4, 1, 3, 3],
                    (0..36).map(|_| rng.uniform(-1.0, 1.0) as f32).collect(),
                )
                .unwrap(),
            ),
            (
                "enc0.conv1.bias".to_string(),
                Tensor::from_data(&[4], (0..4).map(|_| rng.uniform(-1.0, 1.0) as f32).collect())
                    .unwrap(),
            ),
        ];
        ParamSet::new(entries).unwrap()
    }

    #[test]
    fn params_round_trip_bit_exact() {
        let p = arbitrary_params(1);
        let q = decode_params(&encode_params(&p)).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.fingerprint(), q.fingerprint());
    }

    #[test]
    fn corrupt_magic_is_a_format_error() {
        let mut bytes = encode_params(&arbitrary_params(2));
        bytes[0] = b'X';
        match decode_params(&bytes) {
            Err(CoreError::Format { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn truncation_reports_offset() {
        let bytes = encode_params(&arbitrary_params(3));
        let cut = bytes.len() - 7;
        match decode_params(&bytes[..cut]) {
            Err(CoreError::Format { offset, reason }) => {
                assert!(offset as usize <= cut, "offset {offset} reason {reason}");
            }
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn bad_version_rejected() {
        let mut bytes = encode_params(&arbitrary_params(4));
        bytes[4] = 9;
        match decode_params(&bytes) {
            Err(CoreError::Format { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn raster_round_trip() {
        let mut rng = SplitMix64::new(9);
        let r = Raster::from_fn(5, 7, |_, _| rng.uniform(0.0, 1.0) as f32);
        let q = decode_raster(&encode_raster(&r)).unwrap();
        assert_eq!(r, q);
    }

    #[test]
    fn raster_trailing_bytes_rejected() {
        let r = Raster::<f32>::zeros(2, 2);
        let mut bytes = encode_raster(&r);
        bytes.extend_from_slice(&[0, 0, 0, 0]);
        assert!(matches!(
            decode_raster(&bytes),
            Err(CoreError::Format { .. })
        ));
    }
}
