use num_complex::Complex32;

use crate::buffer::{SAMPLE_BYTES, TILE_BYTES};
use crate::error::{Error, Result};

/// Fixed 32 KiB working buffer for one line of a fused pass. Loads and
/// stores against scene storage are counted.
#[derive(Debug, Clone)]
pub struct TileBuffer {
    data: Vec<Complex32>,
    reads: u64,
    writes: u64,
}

impl TileBuffer {
    pub const CAPACITY_BYTES: usize = TILE_BYTES;

    pub fn fits(n: usize) -> bool {
        n.checked_mul(SAMPLE_BYTES).is_some_and(|b| b <= TILE_BYTES)
    }

    pub fn new(n: usize) -> Result<Self> {
        if !Self::fits(n) {
            return Err(Error::LineTooLargeForTile {
                n,
                bytes: n.saturating_mul(SAMPLE_BYTES),
                capacity: TILE_BYTES,
            });
        }
        Ok(Self {
            data: vec![Complex32::new(0.0, 0.0); n],
            reads: 0,
            writes: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn load(&mut self, src: &[Complex32]) {
        self.data.copy_from_slice(src);
        self.reads += 1;
    }

    /// Fill the tile from `src` through `read`, e.g. a transform that reads
    /// the scene line and leaves its output in the tile.
    pub fn load_with<T>(
        &mut self,
        src: &[Complex32],
        read: impl FnOnce(&[Complex32], &mut [Complex32]) -> T,
    ) -> T {
        self.reads += 1;
        read(src, &mut self.data)
    }

    pub fn data(&self) -> &[Complex32] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex32] {
        &mut self.data
    }

    /// Write the tile out through `write`, which receives the tile contents
    /// (and may use them as working space) and the destination line.
    pub fn store_with<T>(
        &mut self,
        dst: &mut [Complex32],
        write: impl FnOnce(&mut [Complex32], &mut [Complex32]) -> T,
    ) -> T {
        self.writes += 1;
        write(&mut self.data, dst)
    }

    /// `(reads, writes)` since the last call.
    pub fn take_counts(&mut self) -> (u64, u64) {
        let c = (self.reads, self.writes);
        self.reads = 0;
        self.writes = 0;
        c
    }
}
