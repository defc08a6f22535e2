//! Writing and reading code files, including rational weights.
//!
//!     cargo run --example code_files

use std::sync::Arc;

use amlab::codefile::{emit, load, parse_code};
use amlab::spectra::parameters;
use amlab::Scheme;

fn main() -> amlab::Result<()> {
    let hamming = amlab::corpus::hamming_code(3)?;
    let dir = std::env::temp_dir().join("amlab-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("hamming7.txt");
    std::fs::write(&path, emit(&hamming, Some("binary Hamming code")))?;
    let back = load(&path, None)?;
    println!("round trip of {} words: {}", back.support_len(), back == hamming);

    let scheme = Arc::new(Scheme::johnson(6, 3)?);
    let text = "# a signed combination\n1,2,3\n-1\t4,5,6\n1/2\t1,2,4\n";
    let chi = parse_code(scheme.clone(), text)?;
    let p = parameters(&chi, scheme.origin())?;
    println!("weighted code: delta_x = {}, s_x = {}, delta* = {}, s* = {}", p.delta_x, p.s_x, p.dual_distance, p.dual_degree);
    print!("{}", emit(&chi, None));

    match parse_code(scheme, "1,2,3\n1,2,9\n") {
        Err(e) => println!("bad file rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
