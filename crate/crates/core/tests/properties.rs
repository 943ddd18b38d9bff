use std::sync::OnceLock;

use proptest::prelude::*;
use recur2code::catalog::{export_records, import_records, Format};
use recur2code::codes::{self, AnalyzeOptions};
use recur2code::gf::{Element, Field, QuadraticExtension};
use recur2code::recurrence::{self, RecurrenceParams};

const ORDERS: [u64; 14] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 81, 121];

fn towers() -> &'static Vec<QuadraticExtension> {
    static T: OnceLock<Vec<QuadraticExtension>> = OnceLock::new();
    T.get_or_init(|| ORDERS.iter().map(|&q| QuadraticExtension::new(Field::with_order(q).unwrap()).unwrap()).collect())
}

/// Index of a tower plus raw seeds, reduced into the field by `elem`.
fn tower_and_seeds(n: usize) -> impl Strategy<Value = (usize, Vec<u64>)> {
    (0..ORDERS.len(), prop::collection::vec(any::<u64>(), n))
}

fn elem(f: &Field, seed: u64) -> Element {
    let q = f.q();
    if seed.is_multiple_of(q) {
        Element::ZERO
    } else {
        f.exp((seed % (q - 1)) as i64)
    }
}

fn nonzero(f: &Field, seed: u64) -> Element {
    f.exp((seed % (f.q() - 1)) as i64)
}

proptest! {
    #[test]
    fn field_axioms((t, s) in tower_and_seeds(3)) {
        let f = towers()[t].base();
        let (x, y, z) = (elem(f, s[0]), elem(f, s[1]), elem(f, s[2]));
        prop_assert_eq!(f.add(x, y), f.add(y, x));
        prop_assert_eq!(f.mul(x, y), f.mul(y, x));
        prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.add(x, f.neg(x)), Element::ZERO);
        prop_assert_eq!(f.sub(f.add(x, y), y), x);
        if !x.is_zero() {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), Element::ONE);
            prop_assert_eq!(f.pow(x, f.group_order()), Element::ONE);
        }
    }

    #[test]
    fn coefficient_and_text_round_trip((t, s) in tower_and_seeds(1)) {
        let f = towers()[t].base();
        let x = elem(f, s[0]);
        prop_assert_eq!(f.from_coeffs(&f.coeffs(x)).unwrap(), x);
        prop_assert_eq!(f.parse_element(&f.format_element(x)).unwrap(), x);
        let vector = format!("{:?}", f.coeffs(x)).replace(' ', "");
        prop_assert_eq!(f.parse_element(&vector).unwrap(), x);
    }

    #[test]
    fn embedding_is_a_homomorphism((t, s) in tower_and_seeds(2)) {
        let tower = &towers()[t];
        let (f, e) = (tower.base(), tower.ext());
        let (x, y) = (elem(f, s[0]), elem(f, s[1]));
        prop_assert_eq!(tower.embed(f.add(x, y)), e.add(tower.embed(x), tower.embed(y)));
        prop_assert_eq!(tower.embed(f.mul(x, y)), e.mul(tower.embed(x), tower.embed(y)));
        prop_assert_eq!(tower.restrict(tower.embed(x)), Some(x));
        prop_assert_eq!(tower.frobenius(tower.embed(x)), tower.embed(x));
    }

    #[test]
    fn trace_and_norm_land_in_base((t, s) in tower_and_seeds(1)) {
        let tower = &towers()[t];
        let e = tower.ext();
        let y = if s[0] % e.q() == 0 { Element::ZERO } else { e.exp((s[0] % (e.q() - 1)) as i64) };
        let tr = tower.relative_trace(y).unwrap();
        let nm = tower.relative_norm(y).unwrap();
        prop_assert_eq!(tower.embed(tr), e.add(y, tower.frobenius(y)));
        prop_assert_eq!(tower.embed(nm), e.mul(y, tower.frobenius(y)));
    }

    #[test]
    fn closed_form_matches_iteration((t, s) in tower_and_seeds(5)) {
        let tower = &towers()[t];
        let f = tower.base();
        let params = RecurrenceParams::new(elem(f, s[0]), nonzero(f, s[1])).unwrap();
        let (g0, g1) = (elem(f, s[2]), nonzero(f, s[3]));
        let fact = recurrence::classify(tower, &params);
        let coeffs = recurrence::solve_coefficients(tower, &fact, g0, g1).unwrap();
        let n = recurrence::period_of(tower, &fact);
        let len = (n as usize + 2).min(600);
        let seq = recurrence::generate_sequence(f, &params, g0, g1, len);
        for i in [0, 1, (s[4] % len as u64) as usize, len - 1] {
            prop_assert_eq!(recurrence::closed_form(tower, &fact, &coeffs, i as u64).unwrap(), seq[i]);
        }
        if len == n as usize + 2 {
            prop_assert_eq!((seq[n as usize], seq[n as usize + 1]), (g0, g1));
        }
    }

    #[test]
    fn period_is_companion_order((t, s) in tower_and_seeds(2)) {
        let tower = &towers()[t];
        let f = tower.base();
        let params = RecurrenceParams::new(elem(f, s[0]), nonzero(f, s[1])).unwrap();
        let n = recurrence::period(tower, &params);
        prop_assert_eq!(n, recurrence::companion_order(f, &params));
        let p = recurrence::profile(tower, &params).unwrap();
        prop_assert_eq!(p.period, n);
        prop_assert_eq!(p.zero_count * p.rank, n);
        prop_assert_eq!(n % p.rank, 0);
    }

    #[test]
    fn theoretical_weights_obey_moments((t, s) in tower_and_seeds(2)) {
        let tower = &towers()[t];
        let f = tower.base();
        let q = f.q();
        let params = RecurrenceParams::new(elem(f, s[0]), nonzero(f, s[1])).unwrap();
        let n = recurrence::period(tower, &params);
        let w = codes::weights_theoretical(tower, &params).unwrap();
        prop_assert!(w.num_weights() <= 2);
        prop_assert_eq!(w.total(), q * q - 1);
        prop_assert_eq!(w.weighted_sum(), q * (q - 1) * n);
    }

    #[test]
    fn export_round_trip((t, s) in tower_and_seeds(6)) {
        let tower = &towers()[t.min(7)];
        let f = tower.base();
        let opts = AnalyzeOptions { bruteforce_budget: Some(1 << 16) };
        let records: Vec<_> = s
            .chunks(2)
            .map(|c| {
                let params = RecurrenceParams::new(elem(f, c[0]), nonzero(f, c[1])).unwrap();
                codes::analyze(tower, &params, &opts).unwrap()
            })
            .collect();
        for format in [Format::Jsonl, Format::Csv] {
            let mut buf = Vec::new();
            let bytes = export_records(&records, format, &mut buf).unwrap();
            prop_assert_eq!(bytes, buf.len() as u64);
            prop_assert!(!buf.contains(&b'\r'));
            prop_assert_eq!(&import_records(buf.as_slice(), format).unwrap(), &records);
        }
    }
}
