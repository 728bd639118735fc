//! Regenerates the shipped standard scene suite under `scenes/suite/`.
//!
//! ```bash
//! cargo run -p hoo-explorer --example make_suite
//! ```

use hoo_explorer::suite::{default_suite_dir, write_suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(Into::into).unwrap_or_else(default_suite_dir);
    for path in write_suite(&dir)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
