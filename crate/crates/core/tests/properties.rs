use pmatroid::format;
use pmatroid::gen;
use pmatroid::gf2::{rank, Gf2Matrix, Gf2Vector};
use pmatroid::parityjoin::parity_walk;
use pmatroid::pfaffian::{pfaffian_dag, pfaffian_naive};
use pmatroid::Parity;
use proptest::prelude::*;

fn matrix_of(r: usize, c: usize) -> impl Strategy<Value = Gf2Matrix> {
    proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
        move |rows| {
            let rows = rows.into_iter().map(Gf2Vector::from_bits).collect();
            Gf2Matrix::from_rows(c, rows).unwrap()
        },
    )
}

fn matrix() -> impl Strategy<Value = Gf2Matrix> {
    (0usize..7, 0usize..9).prop_flat_map(|(r, c)| matrix_of(r, c))
}

fn matrix_pair() -> impl Strategy<Value = (Gf2Matrix, Gf2Matrix)> {
    (0usize..7, 0usize..9).prop_flat_map(|(r, c)| (matrix_of(r, c), matrix_of(r, c)))
}

proptest! {
    #[test]
    fn gf2matrix_round_trip(m in matrix()) {
        prop_assert_eq!(format::parse_gf2matrix(&format::write_gf2matrix(&m)).unwrap(), m);
    }

    #[test]
    fn rank_is_transpose_invariant_and_subadditive((a, b) in matrix_pair()) {
        prop_assert_eq!(rank(&a), rank(&a.transpose()));
        prop_assert!(rank(&a.add(&b).unwrap()) <= rank(&a) + rank(&b));
    }

    #[test]
    fn instance_formats_are_fixed_points(n in 2usize..9, extra in 0usize..8, t in 0u32..3, seed in any::<u64>()) {
        let m = n - 1 + extra;
        let text = format::write_evencut_set(&gen::evencut_set(n, m, t, seed).unwrap());
        prop_assert_eq!(format::write_evencut_set(&format::parse_evencut_set(&text).unwrap()), text);
        let text = format::write_evencut_dim(&gen::evencut_dim(n, m, t, seed).unwrap());
        prop_assert_eq!(format::write_evencut_dim(&format::parse_evencut_dim(&text).unwrap()), text);
        let text = format::write_graft(&gen::graft(n, m, 1, t as usize, seed).unwrap());
        prop_assert_eq!(format::write_graft(&format::parse_graft(&text).unwrap()), text);
        let text = format::write_matching(&gen::matching_instance(2 * n, m + n, t, 5, seed).unwrap());
        prop_assert_eq!(format::write_matching(&format::parse_matching(&text).unwrap()), text);
    }

    #[test]
    fn skew_format_and_pfaffian(half in 1usize..5, t in 0u32..3, seed in any::<u64>()) {
        let d = gen::skew_matrix(2 * half, t, 0.6, 2, 4, 2, seed).unwrap();
        let text = format::write_skew(&d);
        let back = format::parse_skew(&text).unwrap();
        prop_assert_eq!(format::write_skew(&back), text);
        prop_assert_eq!(pfaffian_dag(&back), pfaffian_naive(&d).unwrap());
    }

    #[test]
    fn walks_are_symmetric(n in 1usize..7, m in 0usize..12, t in 0u32..3, seed in any::<u64>()) {
        let pg = gen::parity_graph(n, m, t, seed).unwrap();
        for a in Parity::all(t) {
            for u in 1..=n {
                for v in 1..=n {
                    prop_assert_eq!(
                        parity_walk(&pg, a, u, v).unwrap(),
                        parity_walk(&pg, a, v, u).unwrap()
                    );
                }
            }
        }
    }
}
