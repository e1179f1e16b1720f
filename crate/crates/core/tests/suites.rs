use mfdo_core::verify::{run_suite, Suite};

#[test]
fn ratpoly_suite_passes() {
    for (_, c) in run_suite(Suite::Ratpoly, 11) {
        assert!(c.passed, "{c}");
    }
}

#[test]
fn catalog_suite_passes() {
    for (_, c) in run_suite(Suite::Catalog, 0) {
        assert!(c.passed, "{c}");
    }
}

#[test]
fn oracle_suite_passes() {
    for (_, c) in run_suite(Suite::Oracle, 0) {
        assert!(c.passed, "{c}");
    }
}

#[test]
fn suite_names_parse() {
    for name in ["ratpoly", "torus", "smith", "radial", "oracle", "catalog", "all"] {
        assert_eq!(name.parse::<Suite>().unwrap().name(), name);
    }
    assert!("nope".parse::<Suite>().is_err());
}
