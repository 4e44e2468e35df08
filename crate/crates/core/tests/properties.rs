//! Property tests for the algebraic invariants of each layer.

mod common;

use common::*;
use ortho8::forms::{hyperbolic_gram, QuadraticForm, Sign};
use ortho8::generators::{build_pair, eval_table, family_form, valid_a_values, Family, GeneratorPair};
use ortho8::gf::{adjoin_cube_root, find_nonsquare, Fe, Field};
use ortho8::linalg::mpoly::{NVARS, VAR_A};
use ortho8::linalg::{Matrix, Subspace};
use ortho8::ring::Ring;
use ortho8::steinberg::{basic_matrix, eval_word, word_y, Label, Param, Word};
use ortho8::verify::run::symbolic_ring;
use proptest::prelude::*;

const ORDERS: [u64; 16] = [2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 32, 49, 64, 81, 256];

fn field(q: u64) -> Field {
    let (p, f) = ortho8::arith::prime_power(q).unwrap();
    Field::new(p, f).unwrap()
}

fn field_and_elems(n: usize) -> impl Strategy<Value = (Field, Vec<Fe>)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(move |q| {
        (Just(field(q)), prop::collection::vec((0..q).prop_map(Fe), n))
    })
}

fn matrix(k: &Field, seed: &[u64]) -> Matrix<Field> {
    let q = k.q();
    let n = (seed.len() as f64).sqrt() as usize;
    Matrix::from_fn(k, n, n, |i, j| Fe(seed[i * n + j] % q))
}

/// A field of order at most `max_q` with a random `n x n` matrix.
fn field_and_matrix(max_q: u64, n: usize) -> impl Strategy<Value = (Field, Matrix<Field>)> {
    let qs: Vec<u64> = ORDERS.iter().copied().filter(|&q| q <= max_q).collect();
    (prop::sample::select(qs), prop::collection::vec(any::<u64>(), n * n)).prop_map(|(q, s)| {
        let k = field(q);
        let m = matrix(&k, &s);
        (k, m)
    })
}

fn all_pairs(max_even: u64, max_odd: u64) -> Vec<GeneratorPair> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for q in EVEN_Q.iter().chain(&ODD_Q).copied() {
            if !family.applies_to(q) || q > if q % 2 == 0 { max_even } else { max_odd } {
                continue;
            }
            let avals: Vec<Option<u64>> =
                if family.uses_a() { valid_a_values(family, q, None).unwrap().into_iter().map(Some).collect() } else { vec![None] };
            out.extend(avals.into_iter().map(|a| build_pair(family, q, a, None).unwrap()));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms((k, v) in field_and_elems(3)) {
        let (x, y, z) = (v[0], v[1], v[2]);
        prop_assert_eq!(k.mul(&k.mul(&x, &y), &z), k.mul(&x, &k.mul(&y, &z)));
        prop_assert_eq!(k.add(&k.add(&x, &y), &z), k.add(&x, &k.add(&y, &z)));
        prop_assert_eq!(k.mul(&x, &k.add(&y, &z)), k.add(&k.mul(&x, &y), &k.mul(&x, &z)));
        prop_assert_eq!(k.mul(&x, &y), k.mul(&y, &x));
        prop_assert_eq!(k.add(&x, &k.neg(&x)), k.zero());
        if !k.is_zero(&x) {
            prop_assert_eq!(k.mul(&x, &k.inv(&x).unwrap()), k.one());
        } else {
            prop_assert!(k.inv(&x).is_none());
        }
    }

    #[test]
    fn frobenius_is_a_ring_map((k, v) in field_and_elems(2)) {
        let (x, y) = (v[0], v[1]);
        prop_assert_eq!(k.frobenius(k.add(&x, &y)), k.add(&k.frobenius(x), &k.frobenius(y)));
        prop_assert_eq!(k.frobenius(k.mul(&x, &y)), k.mul(&k.frobenius(x), &k.frobenius(y)));
        prop_assert_eq!(k.frobenius(x), k.pow(&x, k.p()));
    }

    #[test]
    fn char_poly_roots_are_eigenvalues((k, m) in field_and_matrix(256, 4)) {
        let chi = m.char_poly().unwrap();
        for l in k.elements() {
            let at = chi.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, &l), c));
            prop_assert_eq!(k.is_zero(&at), m.eigenspace(l).dim() > 0);
            prop_assert!(m.eigenspace(l).contains_subspace(&m.e_lambda(l)));
        }
    }

    #[test]
    fn char_poly_is_a_conjugation_invariant((k, m) in field_and_matrix(256, 5), seeds in prop::collection::vec(prop::collection::vec(any::<u64>(), 25), 10)) {
        let chi = m.char_poly().unwrap();
        for s in seeds {
            let p = matrix(&k, &s);
            let Ok(pi) = p.inverse() else { continue };
            prop_assert_eq!(p.mul(&m).mul(&pi).char_poly().unwrap(), chi.clone());
        }
    }

    #[test]
    fn determinants_agree((_k, m) in field_and_matrix(256, 6)) {
        let all: Vec<usize> = (0..6).collect();
        let g = m.det_gauss().unwrap();
        prop_assert_eq!(m.det_rows(&all).unwrap(), g);
        prop_assert_eq!(m.det().unwrap(), g);
        prop_assert_eq!(laplace_det(&m), g);
    }

    #[test]
    fn eval_word_is_a_homomorphism(q in prop::sample::select(vec![4u64, 5, 7, 8, 9, 13]), a in any::<u64>(), u in word(), v in word()) {
        let k = field(q);
        let a = Fe(a % q);
        let lhs = eval_word(&k, &u.concat(&v), &a);
        prop_assert!(lhs.equals(&eval_word(&k, &u, &a).mul(&eval_word(&k, &v, &a))));
        prop_assert!(eval_word(&k, &u.inverse(), &a).mul(&eval_word(&k, &u, &a)).is_identity());
        prop_assert_eq!(u.tau_pow(3), u.clone());
    }
}

fn word() -> impl Strategy<Value = Word> {
    let sym = (prop::sample::select(Label::ALL.to_vec()), -3i64..4, -2i64..3, any::<bool>()).prop_map(|(l, c, k, inv)| {
        let w = Word::basic(l, format!("{}", Param::int(c)).parse::<Param>().unwrap());
        let w = if k != 0 { Word::basic(l, Param::a_times(k)) } else { w };
        if inv {
            w.inverse()
        } else {
            w
        }
    });
    prop::collection::vec(sym, 0..8).prop_map(|ws| ws.iter().fold(Word::empty(), |acc, w| acc.concat(w)))
}

/// Random words in the generators of a pair.
fn random_word(pr: &GeneratorPair, choices: &[u8]) -> Matrix<Field> {
    let mut m = Matrix::identity(&pr.field, 8);
    for c in choices {
        m = m.mul(if c % 2 == 0 { &pr.x } else { &pr.y });
    }
    m
}

fn small_pair() -> impl Strategy<Value = GeneratorPair> {
    let pairs = all_pairs(16, 13);
    prop::sample::select(pairs)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, ..ProptestConfig::default() })]

    #[test]
    fn omega_invariants_are_multiplicative(pr in small_pair(), u in prop::collection::vec(any::<u8>(), 0..12), v in prop::collection::vec(any::<u8>(), 0..12)) {
        // Isometries outside Omega: a reflection in an anisotropic basis sum.
        let f = &pr.form;
        let aniso = (0..8).flat_map(|i| (i..8).map(move |j| (i, j))).map(|(i, j)| {
            let mut w = vec![Fe(0); 8];
            w[i] = Fe(1);
            w[j] = Fe(1);
            w
        }).find(|w| !pr.field.is_zero(&f.q(w))).unwrap();
        let r = f.reflection(&aniso).unwrap();
        let g = random_word(&pr, &u).mul(&r);
        let h = random_word(&pr, &v);
        let value = |m: &Matrix<Field>| if pr.field.p() == 2 { f.quasideterminant(m).unwrap() } else { f.spinor_norm(m).unwrap() };
        prop_assert_eq!(value(&g.mul(&h)), value(&g) * value(&h));
        prop_assert_eq!(value(&g.mul(&r)), value(&g) * value(&r));
        prop_assert!(f.in_omega(&h).unwrap());
        if pr.field.p() == 2 {
            prop_assert_eq!(value(&g), quasideterminant_even(&g));
        }
    }

    #[test]
    fn spinor_norm_of_reflection_products(q in prop::sample::select(vec![3u64, 5, 7, 9, 11, 13, 25, 27]), odd in any::<bool>(), seeds in prop::collection::vec(prop::collection::vec(any::<u64>(), 8), 1..6)) {
        let k = field(q);
        let family = if odd { Family::MinusOdd } else { Family::PlusOdd };
        let xi = find_nonsquare(&k).unwrap().value;
        let form = family_form(family, &k, k.one(), Some(xi)).unwrap();
        let mut g = Matrix::identity(&k, 8);
        let mut square = true;
        for s in seeds {
            let w: Vec<Fe> = s.iter().map(|c| Fe(c % q)).collect();
            let qw = q_value(&form, &w);
            if k.is_zero(&qw) {
                continue;
            }
            g = g.mul(&form.reflection(&w).unwrap());
            square ^= !brute_square(&k, qw);
        }
        prop_assert_eq!(form.spinor_norm(&g).unwrap(), if square { 1 } else { -1 });
    }

    #[test]
    fn random_forms_have_consistent_signs(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27]), seed in prop::collection::vec(any::<u64>(), 72)) {
        let k = field(q);
        let form = random_form(&k, &seed);
        prop_assume!(form.is_some());
        let form = form.unwrap();
        let s = form.sign().unwrap();
        prop_assert_eq!(s, form.sign_by_witt().unwrap());
        prop_assert_eq!(form.witt_index().unwrap(), if s == Sign::Plus { 4 } else { 3 });
    }
}

/// A random non-degenerate quadratic form on 8-space: the split form moved
/// by a random invertible matrix, with a random anisotropic twist on one
/// hyperbolic plane.
fn random_form(k: &Field, seed: &[u64]) -> Option<QuadraticForm> {
    let q = k.q();
    let p = Matrix::from_fn(k, 8, 8, |i, j| Fe(seed[i * 8 + j] % q));
    if p.det_gauss().ok()?.0 == 0 {
        return None;
    }
    let twist = Fe(seed[64] % q);
    let c = Fe(seed[65] % q);
    // Plane e1, e-1 carries x^2 + c x y + twist y^2; the rest is split.
    let mut gram = hyperbolic_gram(k, 4);
    gram.set(0, 4, c);
    gram.set(4, 0, c);
    let mut diag = vec![Fe(0); 8];
    diag[0] = Fe(1);
    diag[4] = twist;
    if k.p() != 2 {
        gram.set(0, 0, k.from_int(2));
        gram.set(4, 4, k.mul(&k.from_int(2), &twist));
    }
    let base = QuadraticForm::new(gram, diag).ok()?;
    // Q'(v) = Q(Pv): Gram P^T G P, diagonal Q(P e_i).
    let g2 = p.transpose().mul(&base.gram).mul(&p);
    let d2 = (0..8).map(|i| base.q(&p.column(i))).collect();
    QuadraticForm::new(g2, d2).ok()
}

#[test]
fn frobenius_fixes_every_element_up_to_4096() {
    for q in (2..=4096u64).filter(|&q| ortho8::arith::prime_power(q).is_some()) {
        let k = field(q);
        assert!(k.elements().all(|x| k.pow(&x, q) == x), "q={q}");
    }
}

#[test]
fn cube_roots_and_nonsquares() {
    for q in ORDERS {
        let k = field(q);
        match adjoin_cube_root(&k) {
            Ok((ext, w)) => {
                let e = &ext.ext;
                assert_eq!(e.add(&e.add(&e.mul(&w, &w), &w), &e.one()), e.zero(), "q={q}");
            }
            Err(_) => assert_eq!(k.p(), 3),
        }
        if q % 2 == 1 {
            let n = find_nonsquare(&k).unwrap().value;
            assert_eq!(k.pow(&n, (q - 1) / 2), k.neg(&k.one()), "q={q}");
            assert!(!brute_square(&k, n));
        }
    }
}

#[test]
fn generators_have_orders_two_and_three() {
    for pr in all_pairs(64, 49) {
        assert_eq!(pr.x.element_order(u64::MAX / 2).unwrap(), 2);
        assert_eq!(pr.y.element_order(u64::MAX / 2).unwrap(), 3);
        assert!(pr.form.in_omega(&pr.x).unwrap() && pr.form.in_omega(&pr.y).unwrap());
    }
}

#[test]
fn minus_family_traces_and_eigenvalue_one() {
    // Stated for the minus families with a parameter; over GF(2) xy does
    // have the eigenvalue 1.
    for pr in all_pairs(64, 49).into_iter().filter(|p| matches!(p.family, Family::MinusEven | Family::MinusOdd)) {
        let k = &pr.field;
        let xy = pr.xy();
        let at_one = k.sub(&k.one(), &k.zero());
        let chi = xy.char_poly().unwrap();
        let chi1 = chi.iter().fold(k.zero(), |acc, c| k.add(&acc, &k.mul(c, &at_one)));
        assert!(!k.is_zero(&chi1), "{} {:?}", pr.family, pr.params);
        assert_eq!(xy.eigenspace(k.one()).dim(), 0);
        if pr.family == Family::MinusEven {
            let a1 = k.add(&pr.a, &k.one());
            assert_eq!(xy.trace(), k.mul(&a1, &a1), "{:?}", pr.params);
        }
    }
}

#[test]
fn basic_generators_preserve_the_split_form() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let k = field(q);
        let form = QuadraticForm::new(hyperbolic_gram(&k, 4), vec![Fe(0); 8]).unwrap();
        for l in Label::ALL {
            for alpha in k.elements() {
                let m = basic_matrix(&k, l, &alpha);
                assert!(brute_preserves(&form, &m), "{} q={q}", l.name());
                assert_eq!(laplace_det(&m), k.one());
            }
        }
    }
}

#[test]
fn triality_depends_only_on_the_element() {
    // y and y^4 are different words for the same element. Triality acts
    // on the projective group, so images agree up to the central -I; in odd
    // characteristic tau(y)^3 = -I.
    let y = word_y();
    let y4 = y.pow(4);
    for q in [4u64, 5, 7, 9] {
        let k = field(q);
        for a in k.elements() {
            for i in 0..3 {
                let m = eval_word(&k, &y.tau_pow(i), &a);
                let m4 = eval_word(&k, &y4.tau_pow(i), &a);
                assert!(m.equals(&m4) || m.equals(&m4.neg()), "q={q} i={i}");
                let c = m.pow(3);
                assert!(c.is_identity() || c.neg().is_identity(), "q={q} i={i}");
            }
        }
    }
}

#[test]
fn witt_extension_matches_the_polynomial_test() {
    for q in [4u64, 8, 16] {
        let k = field(q);
        let image: Vec<Fe> = k.elements().map(|b| k.add(&k.mul(&b, &b), &b)).collect();
        for a in k.elements().filter(|a| !k.is_zero(a)) {
            let form = family_form(Family::MinusEven, &k, a, None).unwrap();
            let w: Vec<Vec<Fe>> = (1..4)
                .map(|j| {
                    let mut v = vec![Fe(0); 8];
                    v[0] = a;
                    v[j] = Fe(1);
                    v
                })
                .collect();
            for u in &w {
                assert!(k.is_zero(&q_value(&form, u)));
                for v in &w {
                    assert!(k.is_zero(&form.b(u, v)));
                }
            }
            let a1 = k.pow(&k.add(&a, &k.one()), 4);
            let has_root = image.contains(&a1);
            // Search W-perp for a singular vector outside W.
            let gw = Matrix::from_rows(&k, w.iter().map(|u| form.gram.apply(u)).collect()).unwrap();
            let perp = gw.kernel();
            let span_w = Subspace::span(&k, 8, w.clone());
            let basis = perp.basis().to_vec();
            let mut found = false;
            'search: for code in 0..q.pow(basis.len() as u32) {
                let mut v = vec![Fe(0); 8];
                for (i, b) in basis.iter().enumerate() {
                    let c = Fe(code / q.pow(i as u32) % q);
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi = k.add(vi, &k.mul(&c, bi));
                    }
                }
                if k.is_zero(&q_value(&form, &v)) && !span_w.contains(&v) {
                    found = true;
                    break 'search;
                }
            }
            assert_eq!(found, has_root, "q={q} a={a:?}");
            assert_eq!(form.singular_extension(&w).is_some(), has_root, "q={q} a={a:?}");
        }
    }
}

#[test]
fn symbolic_char_poly_specializes() {
    for (family, p) in [(Family::PlusEven, 2u64), (Family::PlusOdd, 5), (Family::PlusOdd, 7), (Family::MinusEven, 2), (Family::PlusOdd, 3)] {
        let (ring, _, _) = symbolic_ring(p).unwrap();
        let a = ring.var(VAR_A);
        let x = eval_table(&ring, family.x_table(), &a, None).unwrap();
        let y = eval_table(&ring, family.y_table(), &a, None).unwrap();
        let chi = x.mul(&y).char_poly().unwrap();
        let k = ring.coef().clone();
        let mut tried = 0;
        for a0 in k.elements() {
            let mut at = [k.zero(); NVARS];
            at[VAR_A] = a0;
            let Some(spec) = chi.iter().map(|c| ring.eval(c, &at)).collect::<Option<Vec<_>>>() else { continue };
            let Ok(xp) = eval_table(&k, family.x_table(), &a0, None) else { continue };
            let yp = eval_table(&k, family.y_table(), &a0, None).unwrap();
            assert_eq!(spec, xp.mul(&yp).char_poly().unwrap(), "{family} p={p} a0={a0:?}");
            tried += 1;
            if tried == 20 {
                break;
            }
        }
        assert!(tried > 0);
    }
}
