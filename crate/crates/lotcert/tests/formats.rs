use lotcert::formats::{self, diagram, dsl, json};
use lotcert::gen;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn lot_text_and_json_round_trip(seed in any::<u64>(), n in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = gen::random_lot(&mut rng, n);
        let g = t.as_log();
        prop_assert_eq!(&dsl::parse(&dsl::render(g)).unwrap(), g);
        let text = json::pretty(&json::tagged(&json::LogJson::of(g)));
        prop_assert_eq!(&formats::read_log(&text).unwrap(), g);
        prop_assert_eq!(&formats::read_log(&dsl::render(g)).unwrap(), g);
    }

    #[test]
    fn diagram_json_round_trip(seed in any::<u64>(), steps in 0usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (d, _) = gen::random_sphere(&mut rng, steps);
        let text = serde_json::to_string(&diagram::render(&d)).unwrap();
        prop_assert_eq!(diagram::parse(&text).unwrap(), d);
    }

    #[test]
    fn certificates_round_trip(seed in any::<u64>(), n in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = gen::random_injective_lot(&mut rng, n);
        let c = lotcert_core::certify::certify(&t, &[]).unwrap();
        let doc = json::CertificateDoc { lot: json::LogJson::of(&t), certificate: c.clone() };
        let back = json::parse_certificate(&json::pretty(&json::tagged(&doc))).unwrap();
        prop_assert_eq!(back.certificate, c);
        prop_assert_eq!(&back.lot.to_log().unwrap(), t.as_log());
    }
}

#[test]
fn gauss_codes_render_and_parse() {
    for n in 0..=3 {
        for g in gen::alternating_codes(n) {
            assert_eq!(lotcert_core::knot::parse_gauss(&g.render()).unwrap(), g);
        }
    }
}
