//! Stored golden tables agree with the naive oracles and with the main
//! engines on every corpus entry.

use std::path::PathBuf;

use tilting_core::corpus::golden::{file_name, table, Source};
use tilting_core::corpus::{load, ENTRY_NAMES};

fn path(entry: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(file_name(entry))
}

#[test]
fn golden_tables_match_oracles_and_engines() {
    let bless = std::env::var_os("TILTING_BLESS").is_some();
    for name in ENTRY_NAMES {
        let entry = load(name).unwrap();
        let oracle = table(&entry, Source::Oracle).unwrap();
        let engine = table(&entry, Source::Engine).unwrap();
        if bless {
            std::fs::write(path(name), &oracle).unwrap();
        }
        let stored = std::fs::read_to_string(path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(oracle, stored, "{name}: oracle differs from the stored table");
        assert_eq!(engine, stored, "{name}: engine differs from the stored table");
    }
}
