use proptest::prelude::*;
use proptest::sample::select;

use strucrep::fit::{read_samples, write_samples, Record, Target};
use strucrep::groups::{action_on_set, enumerate_group, random_orthogonal, structural_set};
use strucrep::iso::{iso_generators, iso_invariants, ArgList};
use strucrep::json::format_f64;
use strucrep::model::{
    eval_scalar, eval_tensor, model_library, random_raw_model, symmetrize_model,
};
use strucrep::rng::trial_rng;
use strucrep::tensor::{eps_contract, Vec3};
use strucrep::verify::{audit_constraints, SweepConfig};
use strucrep::{Formulation, GroupName, ModelKind, SampleSet, SymTensor2};

fn sym() -> impl Strategy<Value = SymTensor2> {
    prop::array::uniform6(-1.0f64..=1.0).prop_map(SymTensor2::from_components)
}

fn laue() -> impl Strategy<Value = GroupName> {
    select(GroupName::LAUE.to_vec())
}

fn violation(a: &SymTensor2, b: &SymTensor2, scale: f64) -> f64 {
    a.max_abs_diff(b) / (1.0 + scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn library_models_are_equivariant(g in laue(), c in sym(), pick in 0usize..48, which in 0usize..3) {
        let els = enumerate_group(g).unwrap();
        let q = els[pick % els.len()];
        let lib = model_library(g);
        let tensor = &lib[which];
        let t0 = eval_tensor(tensor, &c).unwrap();
        let t1 = eval_tensor(tensor, &c.conj_unchecked(&q)).unwrap();
        prop_assert!(violation(&t0.conj_unchecked(&q), &t1, t0.max_abs()) <= 1e-9);
        let scalar = &lib[3 + which];
        let p0 = eval_scalar(scalar, &c).unwrap();
        let p1 = eval_scalar(scalar, &c.conj_unchecked(&q)).unwrap();
        prop_assert!((p0 - p1).abs() / (1.0 + p0.abs()) <= 1e-9);
    }

    #[test]
    fn isotropic_lists_commute_with_rotation(a in sym(), b in sym(), w in prop::array::uniform3(-1.0f64..=1.0), seed in any::<u64>()) {
        let q = random_orthogonal(&mut trial_rng(seed, 0));
        let args = ArgList::default().sym("A", a).sym("B", b).skew("W", eps_contract(&Vec3::new(w[0], w[1], w[2])));
        let moved = args.conj(&q);
        let (i0, i1) = (iso_invariants(&args), iso_invariants(&moved));
        for (x, y) in i0.values.iter().zip(&i1.values) {
            prop_assert!((x - y).abs() <= 1e-12 * (1.0 + x.abs()));
        }
        let (g0, g1) = (iso_generators(&args), iso_generators(&moved));
        for (x, y) in g0.values.iter().zip(&g1.values) {
            prop_assert!(violation(&x.conj_unchecked(&q), y, x.max_abs()) <= 1e-12);
        }
    }

    #[test]
    fn symmetrized_random_models_satisfy_constraints(g in laue(), seed in any::<u64>(), degree in 0u32..3, tensor in any::<bool>()) {
        prop_assume!(Formulation::of(g) == Formulation::ManGoddard);
        let kind = if tensor { ModelKind::Tensor } else { ModelKind::Scalar };
        let m = symmetrize_model(&random_raw_model(g, kind, degree, seed, 1.0)).unwrap();
        let r = audit_constraints(&m, &SweepConfig::new(5, seed, 1e-12)).unwrap();
        prop_assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn member_actions_compose(g in laue(), i in 0usize..48, j in 0usize..48) {
        let els = enumerate_group(g).unwrap();
        let set = structural_set(g);
        let (a, b) = (els[i % els.len()], els[j % els.len()]);
        let pa = action_on_set(&a, &set).unwrap();
        let pb = action_on_set(&b, &set).unwrap();
        let pab = action_on_set(&(a * b), &set).unwrap();
        // ⟨AB⟩M_i = ⟨A⟩M_{p_B(i)} = M_{p_A(p_B(i))}
        prop_assert_eq!(pab, pa.compose(&pb));
    }

    #[test]
    fn csv_round_trip_is_bit_exact(rows in prop::collection::vec(prop::array::uniform7(any::<f64>().prop_filter("finite", |v| v.is_finite())), 1..8)) {
        let records = rows
            .iter()
            .map(|r| Record { c: SymTensor2::from_components([r[0], r[1], r[2], r[3], r[4], r[5]]), target: Target::Scalar(r[6]) })
            .collect();
        let set = SampleSet::new(ModelKind::Scalar, records).unwrap();
        let mut buf = vec![];
        write_samples(&mut buf, &set).unwrap();
        let back = read_samples(&buf[..], None).unwrap();
        for (x, y) in set.records.iter().zip(&back.records) {
            let bits = |r: &Record| -> Vec<u64> {
                let Target::Scalar(p) = r.target else { unreachable!() };
                r.c.components().iter().chain([&p]).map(|v| v.to_bits()).collect()
            };
            prop_assert_eq!(bits(x), bits(y));
        }
    }

    #[test]
    fn canonical_floats_round_trip(v in any::<f64>().prop_filter("finite", |v| v.is_finite())) {
        prop_assert_eq!(format_f64(v).parse::<f64>().unwrap(), if v == 0.0 { 0.0 } else { v });
    }
}
