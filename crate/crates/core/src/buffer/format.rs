//! Binary scene interchange format.
//!
//! ```text
//! offset  size  field
//! 0       4     magic "SARC"
//! 4       4     rows   (u32 LE)
//! 8       4     cols   (u32 LE)
//! 12      4     layout (u32 LE; 0 = interleaved, 1 = split)
//! 16      8*n   float32 LE payload
//! ```
//!
//! An interleaved payload is `re0 im0 re1 im1 ...`; a split payload is every
//! real part in row-major order followed by every imaginary part.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex32;

use super::{Layout, SceneMatrix};
use crate::error::{Error, Result};

pub const SCENE_MAGIC: [u8; 4] = *b"SARC";
pub const SCENE_HEADER_BYTES: usize = 16;

pub fn encode_scene(scene: &SceneMatrix, layout: Layout) -> Vec<u8> {
    let mut out = Vec::with_capacity(SCENE_HEADER_BYTES + scene.byte_size());
    out.extend_from_slice(&SCENE_MAGIC);
    out.extend_from_slice(&(scene.rows() as u32).to_le_bytes());
    out.extend_from_slice(&(scene.cols() as u32).to_le_bytes());
    out.extend_from_slice(&layout.tag().to_le_bytes());
    match layout {
        Layout::Interleaved => {
            for c in scene.as_slice() {
                out.extend_from_slice(&c.re.to_le_bytes());
                out.extend_from_slice(&c.im.to_le_bytes());
            }
        }
        Layout::Split => {
            for c in scene.as_slice() {
                out.extend_from_slice(&c.re.to_le_bytes());
            }
            for c in scene.as_slice() {
                out.extend_from_slice(&c.im.to_le_bytes());
            }
        }
    }
    out
}

fn read_u32(bytes: &[u8], offset: usize) -> u32 {
    u32::from_le_bytes(bytes[offset..offset + 4].try_into().unwrap())
}

fn read_f32(bytes: &[u8], offset: usize) -> f32 {
    f32::from_le_bytes(bytes[offset..offset + 4].try_into().unwrap())
}

pub fn decode_scene(bytes: &[u8]) -> Result<(SceneMatrix, Layout)> {
    if bytes.len() < SCENE_HEADER_BYTES {
        return Err(Error::Format(format!(
            "{} bytes is shorter than the header",
            bytes.len()
        )));
    }
    if bytes[..4] != SCENE_MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let rows = read_u32(bytes, 4) as usize;
    let cols = read_u32(bytes, 8) as usize;
    let tag = read_u32(bytes, 12);
    let layout =
        Layout::from_tag(tag).ok_or_else(|| Error::Format(format!("unknown layout tag {tag}")))?;
    let n = rows
        .checked_mul(cols)
        .ok_or_else(|| Error::Format("dimensions overflow".into()))?;
    let expected = SCENE_HEADER_BYTES + 8 * n;
    if bytes.len() != expected {
        return Err(Error::Format(format!(
            "expected {expected} bytes for {rows}x{cols}, found {}",
            bytes.len()
        )));
    }
    let payload = &bytes[SCENE_HEADER_BYTES..];
    let data = match layout {
        Layout::Interleaved => (0..n)
            .map(|k| Complex32::new(read_f32(payload, 8 * k), read_f32(payload, 8 * k + 4)))
            .collect(),
        Layout::Split => (0..n)
            .map(|k| Complex32::new(read_f32(payload, 4 * k), read_f32(payload, 4 * (n + k))))
            .collect(),
    };
    Ok((SceneMatrix::new(rows, cols, data)?, layout))
}

pub fn write_scene(path: impl AsRef<Path>, scene: &SceneMatrix, layout: Layout) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    w.write_all(&encode_scene(scene, layout))?;
    w.flush()?;
    Ok(())
}

pub fn read_scene(path: impl AsRef<Path>) -> Result<(SceneMatrix, Layout)> {
    decode_scene(&fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_scene() -> SceneMatrix {
        let data = (0..8 * 4)
            .map(|k| Complex32::new(k as f32 * 0.5, -(k as f32) - 0.25))
            .collect();
        SceneMatrix::new(8, 4, data).unwrap()
    }

    #[test]
    fn header_layout() {
        let bytes = encode_scene(&sample_scene(), Layout::Split);
        assert_eq!(&bytes[..4], b"SARC");
        assert_eq!(read_u32(&bytes, 4), 8);
        assert_eq!(read_u32(&bytes, 8), 4);
        assert_eq!(read_u32(&bytes, 12), 1);
        assert_eq!(bytes.len(), 16 + 8 * 32);
        // first imaginary value sits after all 32 reals
        assert_eq!(read_f32(&bytes, 16 + 4 * 32), -0.25);
    }

    #[test]
    fn round_trip_both_layouts() {
        let scene = sample_scene();
        for layout in [Layout::Interleaved, Layout::Split] {
            let bytes = encode_scene(&scene, layout);
            let (back, l) = decode_scene(&bytes).unwrap();
            assert_eq!(l, layout);
            assert!(back.bit_eq(&scene));
            assert_eq!(encode_scene(&back, layout), bytes);
        }
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.sarc");
        write_scene(&path, &sample_scene(), Layout::Interleaved).unwrap();
        let (back, _) = read_scene(&path).unwrap();
        assert!(back.bit_eq(&sample_scene()));
    }

    #[test]
    fn rejects_malformed() {
        let mut bytes = encode_scene(&sample_scene(), Layout::Interleaved);
        assert!(decode_scene(&bytes[..10]).is_err());
        assert!(decode_scene(&bytes[..bytes.len() - 1]).is_err());
        bytes[12] = 7;
        assert!(decode_scene(&bytes).is_err());
        bytes[0] = b'X';
        assert!(decode_scene(&bytes).is_err());
    }
}
