use proptest::prelude::*;

use polytile::{read_off, read_type, write_off, write_type};
use polytile_core::candidates::{build, registry, Construction};
use polytile_core::combinatorics::CombinatorialType;
use polytile_core::{Point3, Polyhedron};

fn candidate_names() -> Vec<&'static str> {
    registry()
        .iter()
        .filter(|s| matches!(s.construction, Construction::ClosedForm | Construction::CutOf))
        .map(|s| s.name)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn off_round_trip_is_byte_identical(
        which in 0usize..64,
        scale in 0.01f64..100.0,
        shift in (-10.0f64..10.0, -10.0f64..10.0, -10.0f64..10.0),
    ) {
        let names = candidate_names();
        let p = build(names[which % names.len()]).unwrap().scaled(scale).translated(Point3::new(shift.0, shift.1, shift.2));
        let text = write_off(&p);
        let q = read_off(&text).unwrap();
        prop_assert_eq!(q.vertices(), p.vertices());
        prop_assert_eq!(q.faces(), p.faces());
        prop_assert_eq!(write_off(&q), text);
    }

    #[test]
    fn type_files_keep_the_combinatorics(which in 0usize..64) {
        let names = candidate_names();
        let ty = CombinatorialType::of(&build(names[which % names.len()]).unwrap());
        let back = read_type(&write_type(&ty)).unwrap();
        prop_assert_eq!(back.canonical_code(), ty.canonical_code());
    }
}

#[test]
fn every_candidate_survives_a_round_trip() {
    for name in candidate_names() {
        let p: Polyhedron = build(name).unwrap();
        let q = read_off(&write_off(&p)).unwrap();
        assert_eq!(q.measures().unwrap().surface_area, p.measures().unwrap().surface_area, "{name}");
    }
}
