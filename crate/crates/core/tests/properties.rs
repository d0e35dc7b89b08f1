use proptest::prelude::*;
use rand::Rng;
use troplat_core::entropy::entropy_vector;
use troplat_core::ext::ratio;
use troplat_core::io::{to_json_string, ComplexDocument};
use troplat_core::oracle::sampling::random_lattice;
use troplat_core::oracle::{sample_lattice_valuation, trial_rng, SampleConfig};
use troplat_core::polyhedral::complex::{overlapping_maximal_cells, sigma_complex, sigma_is_face_closed};
use troplat_core::subset;
use troplat_core::tropical::{is_member, reconstruct};
use troplat_core::{LatticeMatrix, Rational, TropicalPoint};

fn lattice(seed: u64, max_n: usize) -> LatticeMatrix {
    let mut rng = trial_rng(seed, 0);
    let n = rng.gen_range(1..=max_n);
    let r = rng.gen_range(1..=n);
    random_lattice(&mut rng, r, n, 5, 0, 3)
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-12i64..=12).prop_map(|k| ratio(k, 2)), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn complex_is_a_consistent_subdivision(seed in any::<u64>()) {
        let a = lattice(seed, 3);
        let c = sigma_complex(&entropy_vector(&a).unwrap()).unwrap();
        prop_assert!(overlapping_maximal_cells(&c).is_empty());
        prop_assert!(sigma_is_face_closed(&c));
        for cell in &c.cells {
            prop_assert!(cell.hrep.contains(&cell.witness));
            prop_assert_eq!(c.locate(&cell.witness).map(|x| x.id), Some(cell.id));
            for &f in &cell.faces {
                prop_assert!(c.cell(f).dim < cell.dim);
            }
        }
    }

    #[test]
    fn located_label_decides_membership(seed in any::<u64>(), v in point(3)) {
        let a = lattice(seed, 3);
        let n = a.n();
        let h = entropy_vector(&a).unwrap();
        let c = sigma_complex(&h).unwrap();
        let v = &v[..n];
        let cell = c.locate(v).expect("the complex covers ℝ^n");
        let member = is_member(&h, &TropicalPoint::finite(v)).unwrap();
        prop_assert_eq!(cell.label == subset::full(n), member);
    }

    #[test]
    fn complex_documents_round_trip(seed in any::<u64>()) {
        let a = lattice(seed, 3);
        let c = sigma_complex(&entropy_vector(&a).unwrap()).unwrap();
        let text = to_json_string(&ComplexDocument::new(&c, false).unwrap(), None);
        let back: ComplexDocument = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_complex().unwrap(), c);
    }

    #[test]
    fn sampled_valuations_reconstruct(seed in any::<u64>()) {
        let a = lattice(seed, 4);
        let h = entropy_vector(&a).unwrap();
        let cfg = SampleConfig::default().with_seed(seed).with_trials(20);
        for x in sample_lattice_valuation(&a, &cfg).unwrap() {
            prop_assert!(is_member(&h, &x).unwrap());
            prop_assert!(reconstruct(&h, &x).unwrap().verified());
        }
    }
}
