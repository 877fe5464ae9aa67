use cremona_cli::{parse_map, MapForm, ModelTag, ParseErrorKind};
use cremona_core::algebra::{Monomial, Poly, RationalFunction, Scalar, VarSet};
use proptest::prelude::*;

const CORPUS: [&str; 50] = [
    // affine
    "(x,y) -> (2*x, x^2*y)",
    "(x,y)->(y, y^2 - x)",
    "(x, y) -> (x + 1, y)",
    "(x,y) -> (2x, x y)",
    "(x,y) -> (1/x, 1/y)",
    "(x,y) -> (x*y, x)",
    "(x,y) -> (x^2*y, x*y)",
    "(u,v) -> (v, u)",
    "(x,y) -> ((x+1)/(x-1), y/(x^2+1))",
    "(x,y) -> (i*x, (1+2i)*y)",
    "(x,y) -> (x/2, y/3)",
    "(x,y) -> (0.5*x, 1.25*y + 3)",
    "(x,y) -> (-x, -(y - x^3))",
    "(x,y) -> (x, y + x^5 - 2/3*x^2)",
    "(x,y) -> (x^(-1), y*x^-2)",
    "(x,y) -> ((x*y+1)/(y), x)",
    "(x, y) -> (3*x, y + 1)",
    "(x,y) -> (i*x, 3*y)",
    "(s,t) -> (s + t^2, t)",
    "(x,y) -> (y, -x + y^2 - 1/7*i)",
    // plane, homogeneous
    "[x0:x1:x2] -> [x1*x2 : x0*x2 : x0*x1]",
    "[x0:x1:x2] -> [x0 : x1 : x2]",
    "[x0:x1:x2] -> [x1 : x0 : x2]",
    "[x:y:z] -> [y*z : x*z : x*y]",
    "[x0:x1:x2] -> [x0^2 : x0*x1 : x1^2 + x0*x2]",
    "[x0:x1:x2] -> [x0*x2 : x1*x2 : x2^2 - x0*x1]",
    "[a:b:c] -> [a + b : b + c : c + a]",
    "[x0:x1:x2] -> [2*x0 : 3*x1 : x2]",
    "[x0:x1:x2] -> [i*x0 : x1 : (1-i)*x2]",
    "[x0:x1:x2] -> [x0^3 : x0^2*x1 : x1^3 + x0^2*x2]",
    "[x0:x1:x2] -> [x1^2 : x0*x1 : x2^2]",
    "[x0:x1:x2] -> [x0*x1 : x1^2 : x2*x0 - x1^2]",
    "[x0:x1:x2] -> [1/2*x0 : -x1 : 5/3*x2]",
    "[x0 : x1 : x2] -> [x2 : x0 : x1]",
    "[x0:x1:x2] -> [(x0+x1)^2 : x1*x2 : x0*x2]",
    // P1 x P1, bihomogeneous
    "[x0:x1;y0:y1] -> [x0 : x1 ; y0 : y1]",
    "[x0:x1;y0:y1] -> [2*x0 : x1 ; x0*y0 : x1*y1]",
    "[x0:x1;y0:y1] -> [x0 : x1 ; y1 : y0]",
    "[a:b;c:d] -> [b : a ; d : c]",
    "[x0:x1;y0:y1] -> [x0 + x1 : x1 ; y0 : y1]",
    "[x0:x1;y0:y1] -> [x0 : 3*x1 ; x0^2*y0 + x1^2*y1 : x1^2*y1]",
    "[x0:x1;y0:y1] -> [i*x0 : x1 ; y0 : 2*y1]",
    "[x0:x1;y0:y1] -> [x1 : x0 ; y0*x1 : y1*x0]",
    "[x0:x1;y0:y1] -> [x0*y0 : x1*y1 ; y0 : y1]",
    "[x0:x1;y0:y1] -> [x0 - x1 : x0 + x1 ; y0 : y1]",
    "[x0:x1;y0:y1] -> [x0 : x1 ; x0*y0 + x1*y1 : x1*y1]",
    "[x0:x1;y0:y1] -> [1/2*x0 : x1 ; -y0 : y1]",
    "[x0:x1;y0:y1] -> [x0^2*y0 : x1^2*y1 ; y0 : y1]",
    "[x0:x1;y0:y1] -> [x0 : x1 ; (1+i)*y0 : y1]",
    "[x0 : x1 ; y0 : y1] -> [x1 : x0 ; y1 : y0]",
];

#[test]
fn corpus_round_trips() {
    let mut models = [0; 3];
    for s in CORPUS {
        let m = parse_map(s).unwrap_or_else(|e| panic!("{s}: {e}"));
        models[m.model() as usize] += 1;
        let printed = m.printed();
        let again = parse_map(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
        assert_eq!(again.form, m.form, "{s} printed as {printed}");
        assert_eq!(again.printed(), printed);
    }
    assert!(models.iter().all(|&n| n >= 15), "{models:?}");
}

#[test]
fn models_are_tagged() {
    assert_eq!(parse_map(CORPUS[0]).unwrap().model(), ModelTag::Affine);
    assert_eq!(parse_map(CORPUS[20]).unwrap().model(), ModelTag::Proj2);
    assert_eq!(parse_map(CORPUS[35]).unwrap().model(), ModelTag::Biproj);
}

#[test]
fn models_agree() {
    let aff = parse_map("(x,y) -> (y, y^2 - x)").unwrap();
    let proj = parse_map(&format!("{}", MapForm::Proj2(aff.to_cremona().unwrap().components().clone()))).unwrap();
    assert_eq!(proj.affine().unwrap(), aff.affine().unwrap());
    let bi = parse_map("[x0:x1;y0:y1] -> [x0 : 2*x1 ; x0*y0 : x1*y1]").unwrap();
    let (r1, r2) = bi.affine().unwrap();
    assert_eq!(format!("(x, y) -> ({r1}, {r2})"), "(x, y) -> (2*x, x*y)");
}

#[test]
fn syntax_errors_have_positions() {
    let cases: [(&str, (usize, usize)); 5] = [
        ("(x,y) -> (x +, y)", (1, 14)),
        ("(x,y) -> (x, y", (1, 15)),
        ("(x,y)\n->\n(x $ y, y)", (3, 4)),
        ("[x0:x1:x2] -> [x0 : x1]", (1, 23)),
        ("(x,x) -> (x, x)", (1, 5)),
    ];
    for (s, pos) in cases {
        let e = parse_map(s).unwrap_err();
        assert_eq!((e.line, e.column), pos, "{s}: {e}");
    }
    assert_eq!(parse_map("(x,y) -> (x^(1/2), y)").unwrap_err().kind, ParseErrorKind::NonIntegerExponent);
    assert_eq!(parse_map("(x,y) -> (x, y/(x-x))").unwrap_err().kind, ParseErrorKind::ZeroDenominator);
    assert!(parse_map("(x,y) -> (x/0, y)").unwrap_err().to_string().ends_with("zero denominator"));
}

fn gaussian(re: i64, im: i64, den: i64) -> Scalar {
    &Scalar::gaussian(re, im) * &Scalar::ratio(1, den)
}

fn poly(vars: VarSet, terms: &[(u32, u32, i64, i64, i64)]) -> Poly {
    Poly::from_terms(
        vars,
        terms.iter().map(|&(i, j, re, im, den)| (Monomial::from_slice(&[i, j]), gaussian(re, im, den))),
    )
}

fn terms() -> impl Strategy<Value = Vec<(u32, u32, i64, i64, i64)>> {
    prop::collection::vec((0u32..4, 0u32..4, -5i64..6, -3i64..4, 1i64..5), 1..5)
}

proptest! {
    #[test]
    fn random_affine_maps_round_trip(n1 in terms(), d1 in terms(), n2 in terms()) {
        let v = VarSet::Affine;
        let (num, den) = (poly(v, &n1), poly(v, &d1));
        prop_assume!(!num.is_zero() && !den.is_zero());
        let r1 = RationalFunction::new(num, den).unwrap();
        let r2 = RationalFunction::from_poly(poly(v, &n2));
        let form = MapForm::Affine(r1, r2);
        let parsed = parse_map(&form.to_string()).unwrap();
        prop_assert_eq!(parsed.form, form);
    }
}
