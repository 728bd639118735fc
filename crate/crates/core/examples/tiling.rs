//! Packing per-direction camera images into square textures.
//!
//! ```bash
//! cargo run --release --example tiling
//! ```

use hoo_explorer::tiling::TileLayout;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let layout = TileLayout::with_default_tiles(36)?;
    println!(
        "{} cameras per texture: {}x{} grid of {}x{} tiles, texture {}x{} px",
        layout.n_cam(),
        layout.side(),
        layout.side(),
        layout.tile_h(),
        layout.tile_w(),
        layout.texture_height(),
        layout.texture_width()
    );
    for n in [15, 36, 37, 72, 100] {
        println!("  {n:>3} images -> {} textures", layout.texture_count(n));
    }
    for k in [0, 5, 6, 35, 36, 37] {
        let p = layout.tile_indices(k);
        println!("  image {k:>2}: texture {}, rows {}.., cols {}..", p.texture, p.row_offset, p.col_offset);
    }

    // each image a flat color, so tiles are easy to spot in the texture
    let small = TileLayout::new(4, 2, 3)?;
    let n = 5;
    let images: Vec<u8> = (0..n).flat_map(|k| vec![k as u8 + 1; small.image_bytes(3)]).collect();
    let textures = small.tile(&images, n, 3)?;
    println!("\n5 images of 2x3 px in a 2x2 grid, red channel:");
    for (t, texture) in textures.chunks(small.texture_bytes(3)).enumerate() {
        println!("texture {t}");
        for row in texture.chunks(small.texture_width() * 3) {
            let reds: Vec<String> = row.chunks(3).map(|px| px[0].to_string()).collect();
            println!("  {}", reds.join(" "));
        }
    }
    assert_eq!(small.untile(&textures, n, 3)?, images);
    println!("untile restores all {n} images");
    Ok(())
}
