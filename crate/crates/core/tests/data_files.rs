use std::path::PathBuf;

use hslocal::fixtures;
use hslocal::simplicial::load_complex;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

#[test]
fn shipped_complexes_match_built_in_fixtures() {
    for name in fixtures::NAMES {
        let path = data_dir().join(format!("{name}.json"));
        let loaded = load_complex(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(loaded, fixtures::by_name(name).unwrap(), "{name}");
    }
}

#[test]
fn shipped_files_are_canonical() {
    for name in fixtures::NAMES {
        let text = std::fs::read_to_string(data_dir().join(format!("{name}.json"))).unwrap();
        assert_eq!(text.trim_end(), fixtures::by_name(name).unwrap().to_json(), "{name}");
    }
}
