use nctorus::expr::parse_laurent;
use nctorus::random;
use nctorus::render;
use nctorus_core::laurent::{star_mul, LaurentPoly};

#[test]
fn rendered_products_parse_back_exactly() {
    let mut rng = random::stream(11, "render");
    for g in 1..=3 {
        for n in [2, 3, 4, 6, 12] {
            let lambda = random::cocycle(&mut rng, g, n);
            for _ in 0..30 {
                let f = random::exact_laurent(&mut rng, g, 5, 2, n);
                let h = random::exact_laurent(&mut rng, g, 5, 2, n);
                let p = star_mul(&f, &h, &lambda).unwrap();
                let text = render::laurent(&p);
                let back = LaurentPoly::from_terms(g, parse_laurent(&text, g).unwrap()).unwrap();
                assert_eq!(back, p, "{text}");
            }
        }
    }
}
