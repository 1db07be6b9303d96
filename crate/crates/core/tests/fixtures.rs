use ncj::algebra::verify_isomorphism_witness;
use ncj::catalog::builtin_catalog;
use ncj::cohomology::{central_extension, verify_aut_family, verify_orbit_reduction, Expectation};
use ncj::exactmath::sample::DEFAULT_SEED;
use ncj::exactmath::Matrix;

#[test]
fn orbit_cases_behave_as_recorded() {
    let c = builtin_catalog();
    let mut bad = Vec::new();
    for o in &c.fixtures.orbits {
        let r = verify_orbit_reduction(o, 50, DEFAULT_SEED).unwrap();
        println!(
            "{:28} passed {:2}/{} degenerate {:3} counterexamples {} expect {:?}",
            r.name,
            r.passed,
            r.requested,
            r.degenerate,
            r.counterexamples.len(),
            r.expect
        );
        for ce in &r.counterexamples {
            println!("    {ce}");
        }
        if !r.ok() {
            bad.push(r.name.clone());
        }
    }
    assert!(bad.is_empty(), "{bad:?}");
    assert!(c
        .fixtures
        .orbits
        .iter()
        .any(|o| o.expect == Expectation::Counterexample));
}

#[test]
fn automorphism_families_hold() {
    let c = builtin_catalog();
    for a in &c.fixtures.auts {
        let base = c.algebra(&a.base).unwrap();
        let r = verify_aut_family(&base, &a.family, 100, DEFAULT_SEED).unwrap();
        assert_eq!(r.checked, 100, "{}", r.name);
        assert!(r.failures.is_empty(), "{}: {:?}", r.name, r.failures);
    }
}

#[test]
fn extensions_reproduce_the_table() {
    let c = builtin_catalog();
    for e in &c.fixtures.extensions {
        let base = c.algebra(&e.base).unwrap();
        let ext = central_extension(&base, std::slice::from_ref(&e.form)).unwrap();
        let target = c.algebra(&e.target).unwrap();
        assert!(e.witness.is_none());
        assert!(
            verify_isomorphism_witness(&ext, &target, &Matrix::identity(4)).unwrap(),
            "{}",
            e.target
        );
    }
}
