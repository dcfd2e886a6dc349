use triangle_cf::engine::{expand, from_quadratic, units_equivalent, ExpandOptions, QuadraticInput, Status};
use triangle_cf::geometry::{BoundaryPoint, OrientedGeodesic};
use triangle_cf::group::Word;
use triangle_cf::tower::{FElem, LElem};

fn l(c: [i64; 6]) -> LElem {
    LElem::from_ints(c)
}

fn f(c: [i64; 3]) -> FElem {
    FElem::from_ints(c)
}

fn run(z: LElem, w: LElem, sign: i8) -> triangle_cf::engine::ExpansionResult {
    let q = from_quadratic(&QuadraticInput { z, w, sign }).unwrap();
    expand(&q.geodesic, Some(q.ctx), None, &ExpandOptions::default()).unwrap()
}

fn period_block(r: &triangle_cf::engine::ExpansionResult) -> Vec<i8> {
    let (k0, l0) = r.period().expect("periodic");
    r.digits[k0..k0 + l0].to_vec()
}

fn same_cycle(a: &[i8], b: &[i8]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|s| (0..a.len()).all(|i| a[(i + s) % a.len()] == b[i]))
}

#[test]
fn vertical_axis() {
    let r = run(LElem::theta(), LElem::zero(), -1);
    assert!(same_cycle(&period_block(&r), &[3, -2, 3]), "{:?}", r.digits);
    let u = r.epsilon0().unwrap();
    assert!(units_equivalent(&u, &(f([-1, -1, 0]), f([1, -1, -1]), f([0, 1, 0]))), "{u:?}");
}

#[test]
fn golden_like_example() {
    let z = l([0, 1, 0, 0, 0, -1]);
    let r = run(z, LElem::one(), 1);
    assert!(same_cycle(&period_block(&r), &[1, -1]), "{:?}", r.digits);
    let (a, b, d) = r.epsilon0().unwrap();
    let half = triangle_cf::tower::rat(1, 2);
    let want = (f([-1, -1, 0]).scale(&half), f([-1, 0, 0]).scale(&half), f([-3, 2, 1]));
    assert!(units_equivalent(&(a, b, d), &want));
    let g = r.fundamental_unit().unwrap();
    assert!(g.nrd().is_one());
}

#[test]
fn beta_free_variant() {
    let q = from_quadratic(&QuadraticInput { z: l([0, 1, 0, 0, 0, -1]), w: LElem::one(), sign: 1 }).unwrap();
    let g = OrientedGeodesic::new(BoundaryPoint::ExactL(-LElem::one()), q.geodesic.alpha.clone()).unwrap();
    let b0 = Word::parse("g7^-1").unwrap().eval();
    let r = expand(&g, Some(q.ctx.clone()), Some(b0), &ExpandOptions::default()).unwrap();
    assert_eq!(&r.digits[..2], &[3, 2]);
    assert_eq!(r.period(), Some((2, 2)));
    assert!(same_cycle(&period_block(&r), &[-1, 1]));
    let closed = run(l([0, 1, 0, 0, 0, -1]), LElem::one(), 1);
    assert!(units_equivalent(&r.epsilon0().unwrap(), &closed.epsilon0().unwrap()));
}

#[test]
fn sqrt_two_eta() {
    let r = run(LElem::theta(), LElem::one(), 1);
    let want = [-2, 3, -3, 3, -2, 2, -3, 3, -3, 2];
    assert!(same_cycle(&period_block(&r), &want), "{:?}", r.digits);
    let u = r.epsilon0().unwrap();
    assert!(units_equivalent(&u, &(f([-11, -28, -12]), f([-6, -18, -8]), f([0, 2, 0]))), "{u:?}");

    let b0 = Word::parse("g2").unwrap().eval();
    let q = from_quadratic(&QuadraticInput { z: LElem::theta(), w: LElem::one(), sign: 1 }).unwrap();
    let r = expand(&q.geodesic, Some(q.ctx), Some(b0), &ExpandOptions::default()).unwrap();
    assert_eq!(r.period(), Some((0, 10)));
    assert_eq!(period_block(&r), want);
}

#[test]
fn four_minus_eta() {
    let r = run(l([0, 2, 0, 0, 0, 0]), LElem::theta(), 1);
    assert_eq!(r.period().unwrap().1, 12, "{:?}", r.digits);
    let u = r.epsilon0().unwrap();
    let want = (f([-28, -80, -36]), f([-16, -43, -19]), f([0, 4, -1]));
    assert!(units_equivalent(&u, &want), "{u:?}");

    let b0 = Word::parse("g7 g2 g7^-1").unwrap().eval();
    let q = from_quadratic(&QuadraticInput { z: l([0, 2, 0, 0, 0, 0]), w: LElem::theta(), sign: 1 }).unwrap();
    let r = expand(&q.geodesic, Some(q.ctx), Some(b0), &ExpandOptions::default()).unwrap();
    assert_eq!(period_block(&r), [3, 3, -2, 2, -3, 3, -3, 3, -3, 2, -2, 3]);
}

#[test]
fn edge_geodesic_c0() {
    let r = run(LElem::one(), LElem::one(), 1);
    assert!(matches!(r.status, Status::Periodic { .. }));
    assert!(r.b0.eq_up_to_sign(&triangle_cf::group::g3().inverse()), "{}", r.b0);
    r.fundamental_unit().unwrap();
}
