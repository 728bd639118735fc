//! Packing of per-camera RGB images into square grids of tiles.
//!
//! A renderer that captures `N_dir` views per region copies them into
//! textures holding `n_cam = s * s` tiles each, laid out row-major, so a
//! texture is `s * tile_h` pixels high and `s * tile_w` wide. Views beyond
//! the last full texture leave trailing tiles unused.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TileError {
    #[error("n_cam = {0} is not a positive perfect square")]
    NotSquare(usize),
    #[error("tile dimensions must be positive")]
    EmptyTile,
    #[error("buffer holds {got} bytes, expected {expected}")]
    Length { expected: usize, got: usize },
}

pub const DEFAULT_TILE: usize = 224;

/// Square tile grid geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TileLayout {
    n_cam: usize,
    side: usize,
    tile_h: usize,
    tile_w: usize,
}

/// Where one image lives: texture number plus pixel offsets of its tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TilePlacement {
    pub texture: usize,
    pub row_offset: usize,
    pub col_offset: usize,
}

impl TileLayout {
    pub fn new(n_cam: usize, tile_h: usize, tile_w: usize) -> Result<Self, TileError> {
        let side = (n_cam as f64).sqrt().round() as usize;
        if n_cam == 0 || side * side != n_cam {
            return Err(TileError::NotSquare(n_cam));
        }
        if tile_h == 0 || tile_w == 0 {
            return Err(TileError::EmptyTile);
        }
        Ok(TileLayout { n_cam, side, tile_h, tile_w })
    }

    /// 224 x 224 tiles.
    pub fn with_default_tiles(n_cam: usize) -> Result<Self, TileError> {
        Self::new(n_cam, DEFAULT_TILE, DEFAULT_TILE)
    }

    pub fn n_cam(&self) -> usize {
        self.n_cam
    }

    /// Tiles per texture row and column.
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn tile_h(&self) -> usize {
        self.tile_h
    }

    pub fn tile_w(&self) -> usize {
        self.tile_w
    }

    pub fn texture_height(&self) -> usize {
        self.side * self.tile_h
    }

    pub fn texture_width(&self) -> usize {
        self.side * self.tile_w
    }

    /// `ceil(n_images / n_cam)`.
    pub fn texture_count(&self, n_images: usize) -> usize {
        n_images.div_ceil(self.n_cam)
    }

    pub fn texture_bytes(&self, channels: usize) -> usize {
        self.texture_height() * self.texture_width() * channels
    }

    pub fn image_bytes(&self, channels: usize) -> usize {
        self.tile_h * self.tile_w * channels
    }

    /// Row-major placement of image `k`.
    pub fn tile_indices(&self, k: usize) -> TilePlacement {
        let local = k % self.n_cam;
        TilePlacement {
            texture: k / self.n_cam,
            row_offset: (local / self.side) * self.tile_h,
            col_offset: (local % self.side) * self.tile_w,
        }
    }

    /// Copies `n_images` consecutive `tile_h x tile_w x channels` images into
    /// zero-initialized textures.
    pub fn tile(&self, images: &[u8], n_images: usize, channels: usize) -> Result<Vec<u8>, TileError> {
        let img = self.image_bytes(channels);
        if images.len() != n_images * img {
            return Err(TileError::Length { expected: n_images * img, got: images.len() });
        }
        let mut out = vec![0u8; self.texture_count(n_images) * self.texture_bytes(channels)];
        self.for_each_row(n_images, channels, |src, dst, len| {
            out[dst..dst + len].copy_from_slice(&images[src..src + len]);
        });
        Ok(out)
    }

    /// Inverse of [`tile`](Self::tile): slices `n_images` tiles out of the
    /// texture buffer, ignoring unused trailing tiles.
    pub fn untile(&self, buffer: &[u8], n_images: usize, channels: usize) -> Result<Vec<u8>, TileError> {
        let expected = self.texture_count(n_images) * self.texture_bytes(channels);
        if buffer.len() != expected {
            return Err(TileError::Length { expected, got: buffer.len() });
        }
        let mut out = vec![0u8; n_images * self.image_bytes(channels)];
        self.for_each_row(n_images, channels, |src, dst, len| {
            out[src..src + len].copy_from_slice(&buffer[dst..dst + len]);
        });
        Ok(out)
    }

    /// Calls `f(image_offset, texture_offset, row_len)` for every pixel row
    /// of every image.
    fn for_each_row(&self, n_images: usize, channels: usize, mut f: impl FnMut(usize, usize, usize)) {
        let row_len = self.tile_w * channels;
        let tex_row = self.texture_width() * channels;
        let tex_bytes = self.texture_bytes(channels);
        for k in 0..n_images {
            let p = self.tile_indices(k);
            for r in 0..self.tile_h {
                let src = k * self.image_bytes(channels) + r * row_len;
                let dst = p.texture * tex_bytes + (p.row_offset + r) * tex_row + p.col_offset * channels;
                f(src, dst, row_len);
            }
        }
    }
}
