use std::path::PathBuf;

use troplat_core::io::MatrixDocument;
use troplat_core::Fixture;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

#[test]
fn shipped_matrices_match_the_fixtures() {
    for f in Fixture::ALL {
        let text = std::fs::read_to_string(data_dir().join(format!("{f}.json"))).unwrap();
        let doc: MatrixDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(doc.label.as_deref(), Some(f.name()));
        assert_eq!(doc.to_matrix().unwrap(), f.matrix(), "{f}");
    }
}
