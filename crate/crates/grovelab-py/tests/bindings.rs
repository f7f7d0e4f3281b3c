//! The binding functions called directly from Rust.

use pygrovelab as g;

#[test]
fn goldens_through_bindings() {
    assert_eq!(g::grove_measurement("y3", "1|2|3").unwrap(), "a + b + c");
    assert_eq!(g::bush_value("y3", "15|26|34").unwrap(), "a^2*c + a*b*c + a*c^2");
    assert_eq!(g::medial_pairing("fig3").unwrap(), "1,2|3,11|4,13|5,12|6,8|7,9|10,14");
    assert_eq!(g::enumerate(3, "tc", None).unwrap().len(), 14);
    assert_eq!(g::convert("UUDD", "dyck", "ncp").unwrap(), "12");
    assert_eq!(g::dim_formula(4, 2).unwrap(), "84");
    assert_eq!(g::count_standard(3, 2), 14);
}

#[test]
fn network_json_and_builtins_agree() {
    let json = g::dual_network("y3").unwrap();
    let dual_of_dual = g::dual_network(&json).unwrap();
    assert_eq!(g::medial_pairing(&dual_of_dual).unwrap(), g::medial_pairing("y3").unwrap());
}

#[test]
fn bad_input_is_an_error() {
    assert!(g::bush_value("y3", "14|25|36").is_err());
    assert!(g::beta("12|34|56", "other").is_err());
    assert!(g::medial_pairing("nope").is_err());
}

#[test]
fn run_reports_exit_codes() {
    let (code, out) = g::run(vec!["dims".into(), "--n".into(), "3".into(), "--d".into(), "2".into()]);
    assert_eq!((code, out.as_str()), (0, "14\n"));
    assert_eq!(g::run(vec!["measure".into()]).0, 2);
}
