//! Compact key sizes and folded parameters for a few symmetric codes.
use goppa_fold::harness::keysize;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, k, q, g) in [(8192, 4096, 2, 128), (2048, 1024, 2, 64), (1296, 648, 4, 81)] {
        for line in keysize(n, k, q, g)?.lines() {
            println!("{line}");
        }
        println!();
    }
    Ok(())
}
