//! The JSON documents shipped in `corpus/` stay in lockstep with the bundled
//! in-memory corpus; regenerate with
//! `cargo run -p deltac --example dump_corpus -- corpus`.

use std::path::PathBuf;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn shipped_documents_match_builtin() {
    let dir = corpus_dir();
    for (name, expected) in deltac::corpus::builtin_documents() {
        let actual = std::fs::read_to_string(dir.join(&name))
            .unwrap_or_else(|_| panic!("{name} missing from corpus/"));
        assert_eq!(actual, expected, "{name} is stale");
    }
}

#[test]
fn shipped_corpus_loads_and_equals_builtin() {
    let loaded = deltac::corpus::load_dir(&corpus_dir()).unwrap();
    assert!(loaded.broken.is_empty(), "broken: {:?}", loaded.broken);
    let builtin = deltac::corpus::builtin();

    assert_eq!(loaded.corpus.modules.len(), builtin.modules.len());
    for (a, b) in loaded.corpus.modules.iter().zip(&builtin.modules) {
        assert_eq!(a.name, b.name);
        assert_eq!(*a.algebra, *b.algebra, "{}", a.name);
        assert_eq!(a.module, b.module, "{}", a.name);
        assert_eq!(a.expected, b.expected, "{}", a.name);
    }

    assert_eq!(loaded.corpus.pushouts.len(), builtin.pushouts.len());
    for (a, b) in loaded.corpus.pushouts.iter().zip(&builtin.pushouts) {
        assert_eq!(a.name, b.name);
        assert_eq!(*a.env.sub(), *b.env.sub(), "{}", a.name);
        assert_eq!(*a.env.amb(), *b.env.amb(), "{}", a.name);
        assert_eq!(a.env.embedding(), b.env.embedding(), "{}", a.name);
        assert_eq!(a.x_b, b.x_b, "{}", a.name);
        assert_eq!(a.derivation, b.derivation, "{}", a.name);
    }
}
