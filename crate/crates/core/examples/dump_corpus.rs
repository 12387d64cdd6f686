//! Write the bundled corpus out as JSON documents.
//!
//! Usage: cargo run -p deltac --example dump_corpus -- <dir>

use std::path::PathBuf;

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    std::fs::create_dir_all(&dir).expect("create output dir");
    let files = deltac::corpus::builtin_documents();
    let count = files.len();
    for (name, text) in files {
        std::fs::write(dir.join(&name), text).expect("write corpus file");
    }
    println!("wrote {count} documents to {}", dir.display());
}
