use std::collections::BTreeSet;

use proptest::prelude::*;

use masl_core::coalition::{cl_check, ClFormula};
use masl_core::eval::{epistemic_lift, extension, vector_relation, MaslModel, Relation, StateSet, Structure};
use masl_core::game::{combine, nash_set, nash_set_by_deviation_scan, Coalition, StrategicGame};
use masl_core::lang::{parse_formula, parse_program, render_formula, render_program, Signature, StrategyTerm};
use masl_core::sample::{game_atoms, random_cl_formula, random_game, rng, AstSampler};
use masl_core::voting::{set_better, Ballot};

fn game(seed: u64) -> StrategicGame {
    random_game(&mut rng(seed))
}

fn relation(size: usize, bits: &[bool]) -> Relation {
    Relation::from_fn(size, |s, t| bits[s * size + t])
}

fn coalition_from_mask(mask: u8, players: usize) -> Coalition {
    Coalition::new((0..players).filter(|i| mask & (1 << i) != 0), players).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rendering_parses_back(seed in any::<u64>()) {
        let g = game(seed);
        let sig = Signature::of_game(&g);
        let sampler = AstSampler::new(&sig);
        let mut r = rng(seed ^ 0x5eed);
        let f = sampler.formula(&mut r, 5);
        prop_assert_eq!(parse_formula(&render_formula(&f), &sig).unwrap(), f);
        let p = sampler.program(&mut r, 5);
        prop_assert_eq!(parse_program(&render_program(&p), &sig).unwrap(), p);
    }

    #[test]
    fn star_is_union_of_powers(bits in prop::collection::vec(any::<bool>(), 36)) {
        let r = relation(6, &bits);
        let mut acc = Relation::identity(6);
        let mut power = Relation::identity(6);
        for _ in 0..6 {
            power = power.compose(&r);
            acc = acc.union(&power);
        }
        let star = r.star();
        prop_assert_eq!(&star, &acc);
        prop_assert!(star.is_reflexive() && star.is_transitive());
    }

    #[test]
    fn box_and_diamond_are_dual(bits in prop::collection::vec(any::<bool>(), 25), set in prop::collection::vec(any::<bool>(), 5)) {
        let r = relation(5, &bits);
        let x = StateSet::from_fn(5, |i| set[i]);
        prop_assert_eq!(r.box_of(&x), r.diamond_of(&x.complement()).complement());
        prop_assert_eq!(r.converse().converse(), r);
    }

    #[test]
    fn adversary_is_union_over_strategies(seed in any::<u64>(), player in 0usize..3) {
        let g = game(seed);
        let i = player % g.players();
        let model = MaslModel::new(g.clone());
        let mut r = rng(seed.wrapping_add(1));
        let sig = Signature::of_game(&g);
        let v = AstSampler::new(&sig).vector(&mut r).with(i, StrategyTerm::Adversary);
        let whole = vector_relation(&model, &v).unwrap();
        let mut parts = Relation::empty(model.state_count());
        for a in g.form().strategies(i) {
            let concrete = v.with(i, StrategyTerm::Concrete(a.clone()));
            parts = parts.union(&vector_relation(&model, &concrete).unwrap());
        }
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn profiles_index_densely(seed in any::<u64>()) {
        let g = game(seed);
        let form = g.form();
        let expected: usize = form.strategy_sets().iter().map(Vec::len).product();
        prop_assert_eq!(form.profile_count(), expected);
        for (k, p) in form.all_profiles().iter().enumerate() {
            prop_assert_eq!(form.profile_index(p), k);
            prop_assert_eq!(&form.profile_at(k), p);
            prop_assert_eq!(&form.parse_profile_key(&form.profile_key(p)).unwrap(), p);
        }
    }

    #[test]
    fn split_and_combine_round_trip(seed in any::<u64>(), mask in any::<u8>()) {
        let g = game(seed);
        let form = g.form();
        let c = coalition_from_mask(mask, form.players());
        let rest = c.complement(form.players());
        for p in form.all_profiles() {
            let mine = c.members().map(|i| (i, p[i])).collect();
            let theirs = rest.members().map(|i| (i, p[i])).collect();
            prop_assert_eq!(combine(form, &c, &mine, &theirs).unwrap(), p);
        }
    }

    #[test]
    fn equilibrium_oracles_agree(seed in any::<u64>()) {
        let g = game(seed);
        prop_assert_eq!(nash_set(&g), nash_set_by_deviation_scan(&g));
    }

    #[test]
    fn larger_coalitions_force_more(seed in any::<u64>(), small in any::<u8>(), extra in any::<u8>()) {
        let g = game(seed);
        let n = g.players();
        let model = MaslModel::new(g.clone());
        let body = random_cl_formula(&mut rng(seed ^ 7), n, &game_atoms(&g), 2);
        let c = coalition_from_mask(small, n);
        let d = coalition_from_mask(small | extra, n);
        let first = model.profile(0).clone();
        let forced = cl_check(&model, &first, &ClFormula::coal_box(c, body.clone())).unwrap();
        for s in 0..model.state_count() {
            let here = cl_check(&model, model.profile(s), &ClFormula::coal_box(d.clone(), body.clone())).unwrap();
            // the coalition box does not look at the current profile
            let same = cl_check(&model, model.profile(s), &ClFormula::coal_box(coalition_from_mask(small, n), body.clone())).unwrap();
            prop_assert_eq!(same, forced);
            prop_assert!(!forced || here);
        }
    }

    #[test]
    fn lift_preserves_flat_truth(seed in any::<u64>()) {
        let g = game(seed);
        let flat = MaslModel::new(g.clone());
        let lifted = epistemic_lift(&g);
        prop_assert_eq!(lifted.state_count(), flat.state_count());
        for agent in lifted.agents() {
            prop_assert!(agent.is_equivalence());
        }
        let sig = Signature::of_game(&g);
        let f = AstSampler::new(&sig).formula(&mut rng(seed ^ 3), 4);
        // only formulas without agent programs have a flat reading
        if let (Ok(a), Ok(b)) = (extension(&flat, &f), extension(&lifted, &f)) {
            for s in 0..flat.state_count() {
                let w = lifted.find_state(&format!("full:{}", flat.state_key(s))).unwrap();
                prop_assert_eq!(a.contains(s), b.contains(w));
            }
        }
    }

    #[test]
    fn singleton_preference_matches_ballot(order in Just(vec!["a", "b", "c"]).prop_shuffle(), x in 0usize..3, y in 0usize..3) {
        let alts: Vec<String> = ["a", "b", "c"].map(String::from).to_vec();
        let ballot = Ballot::new(order.iter().map(|s| s.to_string()).collect(), &alts).unwrap();
        let single = |k: usize| BTreeSet::from([alts[k].clone()]);
        let better = set_better(&single(x), &single(y), &ballot).unwrap();
        prop_assert_eq!(better, ballot.prefers(&alts[x], &alts[y]));
        prop_assert!(!(better && set_better(&single(y), &single(x), &ballot).unwrap()));
    }
}
