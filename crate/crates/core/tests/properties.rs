use proptest::prelude::*;
use taut_core::charpoly::int;
use taut_core::tautring::{BasisClass, Block, DiagMonomial, Word};
use taut_core::{CharacterPolynomial, DivSym, Engine, Factor, Generator, SurfaceClass, TautExpr};

fn factor(level: u32) -> impl Strategy<Value = (Factor, u32)> {
    let l = SurfaceClass::divisor(DivSym::L);
    let w = SurfaceClass::divisor(DivSym::Omega);
    let pt = SurfaceClass::point(CharacterPolynomial::one());
    prop_oneof![
        (2..=level).prop_map(|k| (Factor::Gamma(k), 1)),
        (2..=level).prop_map(|k| (Factor::Delta(k), 1)),
        (1..=level).prop_map(move |s| (Factor::Class(s, l.clone()), 1)),
        (1..=level).prop_map(move |s| (Factor::Class(s, w.clone()), 1)),
        (1..=level).prop_map(move |s| (Factor::Class(s, pt.clone()), 2)),
    ]
}

fn word(level: u32, codim: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec(factor(level), 1..=codim as usize)
        .prop_filter("exact codimension", move |fs| fs.iter().map(|f| f.1).sum::<u32>() == codim)
        .prop_map(|fs| fs.into_iter().map(|f| f.0).collect())
}

fn coeff() -> impl Strategy<Value = CharacterPolynomial> {
    (-4i64..=4).prop_map(CharacterPolynomial::from_int)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    // int_{W^3} u Delta<3> = 2 int_{W^2} u for u of codimension 3 on W^2
    #[test]
    fn fibre_integral(u in prop::collection::vec((coeff(), word(2, 3)), 1..=3)) {
        let e = Engine::default();
        let lifted: Vec<_> = u.iter().map(|(c, w)| {
            let mut w = w.clone();
            w.push(Factor::Delta(3));
            (c.clone(), w)
        }).collect();
        let lhs = e.integrate(&e.expand(&lifted, 3).unwrap()).unwrap();
        let rhs = e.integrate(&e.expand(&u, 2).unwrap()).unwrap().scale(&int(2));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn grading_is_additive(codim in 1u32..=4, w in word(3, 4)) {
        let e = Engine::default();
        let w: Word = w.into_iter().take(codim as usize).collect();
        let want: u32 = w.iter().map(|f| match f {
            Factor::Class(_, c) => c.pure_degree().unwrap(),
            _ => 1,
        }).sum();
        let x = e.expand_word(&w, 3).unwrap();
        if !x.is_zero() {
            prop_assert_eq!(x.codim(), Some(want as i64));
        }
    }

    #[test]
    fn push_pull_adjunction(
        split in 1usize..=3,
        classes in prop::collection::vec(0usize..3, 2),
    ) {
        let e = Engine::default();
        let pick = |i: usize| [BasisClass::Div(DivSym::L), BasisClass::Div(DivSym::Omega), BasisClass::Pt][i].clone();
        let slots: Vec<u32> = (1..=3).collect();
        let (a, b) = slots.split_at(split);
        let mut blocks = vec![Block { slots: a.to_vec(), class: pick(classes[0]) }];
        if !b.is_empty() {
            blocks.push(Block { slots: b.to_vec(), class: pick(classes[1]) });
        }
        let d = DiagMonomial::new(blocks).unwrap();
        prop_assume!(d.codim() <= 4);
        let u = TautExpr::from_generator(3, Generator::Diag(d));
        let up = e.pullback(&u);
        prop_assert!(e.pushforward(&up).unwrap().is_zero());
        let l = SurfaceClass::divisor(DivSym::L);
        let down = e.pushforward(&e.mul_class(&up, 4, &l).unwrap()).unwrap();
        prop_assert_eq!(down, u.scale(&CharacterPolynomial::symbol("dL")));
    }
}
