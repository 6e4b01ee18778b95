use quartic_core::endo::forms::{samples_for, sum_zero_surfaces};
use quartic_core::endo::{derive_validated_forms, Endomorphisms};
use quartic_core::orbit::{generate_orbit_with, Serial, Strategy};
use quartic_core::props::Suite;
use quartic_core::{ProjPoint, RulingPair, Surface};

fn orbit_points(endos: &Endomorphisms, seed: &ProjPoint, nodes: usize, digits: usize) -> Vec<ProjPoint> {
    let rep = generate_orbit_with(endos, seed, &Strategy::new(nodes, digits), &Serial).unwrap();
    rep.nodes.into_iter().map(|n| n.point).collect()
}

#[test]
fn forms_agree_with_construction_on_several_surfaces() {
    let forms = derive_validated_forms().unwrap();
    let one = ProjPoint::from_i64([1, 1, 1, 1]).unwrap();
    let mut checked = 0;
    for coeffs in sum_zero_surfaces(40).into_iter().skip(30).take(3) {
        samples_for(coeffs).unwrap();
        let s = Surface::from_i64(coeffs).unwrap();
        let r = RulingPair::for_surface(&s, &one).unwrap();
        let endos = Endomorphisms::new(s.clone(), r, Some(forms.clone()));
        for p in orbit_points(&endos, &one, 24, 120) {
            assert!(s.contains(&p));
            let pair = endos.richmond(&p).unwrap();
            for i in 1..=2 {
                assert_eq!(endos.via_forms(i, &p).unwrap().unwrap(), *pair.get(i));
            }
            checked += 1;
        }
    }
    assert!(checked >= 60);
}

#[test]
fn property_suite_on_a_non_sum_zero_surface() {
    let s = Surface::from_i64([-9, -1, 2, 8]).unwrap();
    let seed = ProjPoint::from_i64([1, 1, 1, 1]).unwrap();
    let r = RulingPair::for_surface(&s, &seed).unwrap();
    let endos = Endomorphisms::new(s, r, None);
    let pts = orbit_points(&endos, &seed, 16, 80);
    for c in Suite::new(&endos).run(&pts) {
        assert_ne!(c.status(), "fail", "{}: {:?}", c.name, c.first_failure);
    }
}
