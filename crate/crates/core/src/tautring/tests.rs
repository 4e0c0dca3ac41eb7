use super::*;
use crate::charpoly::CharacterPolynomial as P;
use crate::surface::{DivSym, FibreKind, NodeFlavor, SurfaceClass, SurfaceGeometry};

fn q(blocks: &[(&[Slot], BasisClass)]) -> Generator {
    Generator::Diag(
        DiagMonomial::new(blocks.iter().map(|(s, c)| Block { slots: s.to_vec(), class: c.clone() }).collect()).unwrap(),
    )
}

fn scroll(kind: FibreKind, i: &[Slot], split: usize, j: &[Slot], k: &[Slot]) -> Generator {
    let nb = |s: &[Slot]| s.iter().map(|&x| NodeBlock { slots: vec![x], class: CurveClass::One }).collect();
    Generator::Node(NodeClass { profile: NodeProfile::new(kind, i.to_vec(), split, nb(j), nb(k)), section: false })
}

fn l() -> BasisClass {
    BasisClass::Div(DivSym::L)
}

fn omega() -> BasisClass {
    BasisClass::Div(DivSym::Omega)
}

fn lclass() -> SurfaceClass {
    SurfaceClass::divisor(DivSym::L)
}

fn expr(level: u32, terms: Vec<(i64, Generator)>) -> TautExpr {
    let mut e = TautExpr::zero(level);
    for (c, g) in terms {
        e.add_term(g, P::from_int(c));
    }
    e
}

#[test]
fn gamma_on_q12() {
    let e = Engine::default();
    let x = e.mul_gamma(&TautExpr::from_generator(2, q(&[(&[1, 2], BasisClass::One)]))).unwrap();
    let want = expr(2, vec![(1, scroll(FibreKind::Reducible, &[1, 2], 1, &[], &[])), (-1, q(&[(&[1, 2], omega())]))]);
    assert_eq!(x, want);

    let plus = Engine { conv: Conventions { omega: OmegaSign::Plus, ..Default::default() }, ..Default::default() };
    let y = plus.mul_gamma(&TautExpr::from_generator(2, q(&[(&[1, 2], BasisClass::One)]))).unwrap();
    assert_eq!(y.coeff(&q(&[(&[1, 2], omega())])), P::one());
}

#[test]
fn gamma_on_small_diagonal_uses_beta() {
    let e = Engine::default();
    let x = e.mul_gamma(&TautExpr::from_generator(3, q(&[(&[1, 2, 3], BasisClass::One)]))).unwrap();
    assert_eq!(x.coeff(&scroll(FibreKind::Reducible, &[1, 2, 3], 1, &[], &[])), P::from_int(3));
    assert_eq!(x.coeff(&scroll(FibreKind::Reducible, &[1, 2, 3], 2, &[], &[])), P::from_int(3));
    assert_eq!(x.coeff(&q(&[(&[1, 2, 3], omega())])), P::from_int(-3));
    assert_eq!(x.len(), 3);
}

#[test]
fn gamma_on_singletons_only_merges() {
    let e = Engine::default();
    let g = q(&[(&[1], l()), (&[2], l()), (&[3], l())]);
    let x = e.mul_gamma(&TautExpr::from_generator(3, g)).unwrap();
    let l2 = P::symbol("L2");
    assert_eq!(x.len(), 3);
    assert_eq!(x.coeff(&q(&[(&[1, 2], BasisClass::Pt), (&[3], l())])), l2);
    assert_eq!(x.coeff(&q(&[(&[1], l()), (&[2, 3], BasisClass::Pt)])), l2);
}

#[test]
fn class_multiplication() {
    let e = Engine::default();
    let x = e.mul_class(&TautExpr::from_generator(2, q(&[(&[1, 2], BasisClass::One)])), 1, &lclass()).unwrap();
    assert_eq!(x, TautExpr::from_generator(2, q(&[(&[1, 2], l())])));
    let f = TautExpr::from_generator(2, scroll(FibreKind::Reducible, &[1, 2], 1, &[], &[]));
    assert!(e.mul_class(&f, 1, &lclass()).unwrap().is_zero());
    let y = e.mul_class(&TautExpr::from_generator(2, q(&[(&[1], l())])), 2, &lclass()).unwrap();
    assert_eq!(y, TautExpr::from_generator(2, q(&[(&[1], l()), (&[2], l())])));
}

#[test]
fn class_on_node_block_restricts_to_fibre_degree() {
    let e = Engine::default();
    let f = TautExpr::from_generator(3, scroll(FibreKind::Reducible, &[1, 2], 1, &[3], &[]));
    let x = e.mul_class(&f, 3, &lclass()).unwrap();
    let (g, c) = x.terms().next().unwrap();
    assert_eq!(c, &P::symbol("dL"));
    assert_eq!(g.dimension(3), 1);
}

#[test]
fn pushforward_rules() {
    let e = Engine::default();
    let x = e.pushforward(&TautExpr::from_generator(3, q(&[(&[1, 3], l())]))).unwrap();
    assert_eq!(x, TautExpr::from_generator(2, q(&[(&[1], l())])));
    let y = e.pushforward(&TautExpr::from_generator(3, q(&[(&[3], l())]))).unwrap();
    assert_eq!(y, TautExpr::one(2).scale(&P::symbol("dL")));
    let z = e.pushforward(&TautExpr::from_generator(3, q(&[(&[1, 2], l())]))).unwrap();
    assert!(z.is_zero());
    let w = e.pushforward(&TautExpr::from_generator(3, q(&[(&[1, 2], BasisClass::One), (&[3], BasisClass::Pt)]))).unwrap();
    assert_eq!(w, TautExpr::from_generator(2, q(&[(&[1, 2], BasisClass::Div(DivSym::F))])));
}

#[test]
fn pullback_completions() {
    let e = Engine::default();
    let f = TautExpr::from_generator(2, scroll(FibreKind::Reducible, &[1, 2], 1, &[], &[]));
    let want = expr(
        3,
        vec![
            (1, scroll(FibreKind::Reducible, &[1, 2], 1, &[3], &[])),
            (1, scroll(FibreKind::Reducible, &[1, 2], 1, &[], &[3])),
        ],
    );
    assert_eq!(e.pullback(&f), want);
    let irr = Engine { geo: SurfaceGeometry::standard().with_flavor(NodeFlavor::Irreducible), ..Default::default() };
    let g = TautExpr::from_generator(2, scroll(FibreKind::Irreducible, &[1, 2], 1, &[], &[]));
    assert_eq!(irr.pullback(&g).len(), 1);
    let d = TautExpr::from_generator(2, q(&[(&[1, 2], omega())]));
    assert_eq!(e.pullback(&d), TautExpr::from_generator(3, q(&[(&[1, 2], omega())])));
}

#[test]
fn dimensions() {
    assert_eq!(q(&[(&[1, 2, 3, 4], BasisClass::One)]).dimension(4), 2);
    assert_eq!(scroll(FibreKind::Reducible, &[1, 2], 1, &[], &[]).dimension(2), 1);
    let s = Generator::Node(NodeClass {
        profile: NodeProfile::new(FibreKind::Reducible, vec![1, 2], 1, vec![], vec![]),
        section: true,
    });
    assert_eq!(s.dimension(2), 0);
}

#[test]
fn expand_basic() {
    let e = Engine::default();
    assert_eq!(
        e.expand_word(&vec![Factor::Gamma(2)], 2).unwrap(),
        TautExpr::from_generator(2, q(&[(&[1, 2], BasisClass::One)]))
    );
    assert!(e.expand_word(&vec![Factor::Gamma(1)], 2).unwrap().is_zero());
    assert!(e.expand_word(&vec![Factor::Gamma(3)], 2).is_err());
    assert!(matches!(e.expand_word(&vec![Factor::Gamma(2); 4], 2), Err(crate::TautError::Dimension(_))));
}

#[test]
fn small_diagonal_closure() {
    let e = Engine::default();
    for (m, beta) in [(2u32, 1i64), (3, 6)] {
        let slots: Vec<Slot> = (1..=m).collect();
        let small = TautExpr::from_generator(m, q(&[(&slots, BasisClass::One)]));
        let x = e.mul_gamma(&e.mul_gamma(&small).unwrap()).unwrap();
        let b = crate::staircase::binom(m as i64, 2);
        let want = &P::scaled_symbol(-beta, "sigma") + &P::scaled_symbol(b * b, "omega2");
        assert_eq!(e.integrate(&x).unwrap(), want);
    }
}

#[test]
fn node_fact_gamma3_squared_on_f13() {
    let e = Engine::default();
    let f = expr(
        3,
        vec![
            (1, scroll(FibreKind::Reducible, &[1, 3], 1, &[2], &[])),
            (1, scroll(FibreKind::Reducible, &[1, 3], 1, &[], &[2])),
        ],
    );
    let x = e.mul_gamma(&e.mul_gamma(&f).unwrap()).unwrap();
    assert_eq!(e.integrate(&x).unwrap(), P::scaled_symbol(-6, "sigma"));
    // Gamma<2>^2 on F(13:) vanishes by the projection formula
    assert!(e.pushforward(&f).unwrap().is_zero());
}

#[test]
fn orthogonality() {
    let e = Engine::default();
    for g in [
        scroll(FibreKind::Reducible, &[1, 2], 1, &[3], &[]),
        scroll(FibreKind::Reducible, &[2, 3], 1, &[], &[1]),
    ] {
        let s = Generator::Node(match &g {
            Generator::Node(n) => NodeClass { section: true, ..n.clone() },
            _ => unreachable!(),
        });
        for x in [g, s] {
            let Generator::Node(n) = &x else { unreachable!() };
            for &slot in &n.profile.i_set {
                let y = e.mul_class(&TautExpr::from_generator(3, x.clone()), slot, &lclass()).unwrap();
                assert!(y.is_zero());
            }
        }
    }
}

#[test]
fn class_timing_does_not_matter() {
    let top = Engine::default();
    let early = Engine { conv: Conventions { timing: ClassTiming::Earliest, ..Default::default() }, ..Default::default() };
    let lc = |s| Factor::Class(s, lclass());
    let words: Vec<(u32, Word)> = vec![
        (2, vec![lc(1), Factor::Gamma(2), Factor::Gamma(2)]),
        (2, vec![lc(1), lc(2), Factor::Delta(2)]),
        (3, vec![lc(3), lc(1), Factor::Delta(3), Factor::Delta(3)]),
        (3, vec![lc(1), Factor::Delta(2), Factor::Delta(3), Factor::Delta(3)]),
        (3, vec![lc(2), Factor::Delta(3), Factor::Delta(3), Factor::Delta(3)]),
    ];
    for (m, w) in words {
        assert_eq!(top.integrate_word(&w, m).unwrap(), early.integrate_word(&w, m).unwrap(), "{w:?}");
    }
}

#[test]
fn chern_pieces() {
    let e = Engine::default();
    let c = e.chern_taut(&lclass(), 1).unwrap();
    assert_eq!(c[0], TautExpr::one(1));
    assert_eq!(c[1], TautExpr::from_generator(1, q(&[(&[1], l())])));
    let c2 = e.chern_taut(&lclass(), 2).unwrap();
    let want = expr(2, vec![(1, q(&[(&[1], l())])), (1, q(&[(&[2], l())])), (-1, q(&[(&[1, 2], BasisClass::One)]))]);
    assert_eq!(c2[1], want);
    assert_eq!(c2.len(), 3);
}

#[test]
fn rendering() {
    let e = Engine::default();
    let x = e.expand_word(&vec![Factor::Delta(3), Factor::Delta(3)], 3).unwrap();
    assert_eq!(x.to_string(), "2*q[{1,2,3}](1) - q[{1,3}](omega) - q[{2,3}](omega) + F(13:) + F(23:)");
    assert_eq!(TautExpr::zero(2).to_string(), "0");
}
