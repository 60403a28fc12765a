//! Direct evaluation of the degree-5 quotient family over F_2 against its
//! closed form. Level 10 works at ambient dimension 30241 with packed-word
//! elimination; the whole sweep is a few seconds in an optimized build.

use fiperiod_core::cohomology::invariants_dim;
use fiperiod_core::oracle::{example1_dim, example1_presentation};

#[test]
fn degree_five_invariants_match_closed_form() {
    let pres = example1_presentation(5).unwrap();
    for n in 5..=9 {
        let level = pres.evaluate(n);
        assert_eq!(
            invariants_dim(&level) as u64,
            example1_dim(5, n).unwrap(),
            "n = {n}"
        );
    }
}

#[test]
fn degree_five_group_relations_hold_on_a_heavy_level() {
    let pres = example1_presentation(5).unwrap();
    assert!(pres.evaluate(8).check_coxeter_relations());
}
