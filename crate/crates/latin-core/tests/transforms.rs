use latin_core::seed::split_seed;
use latin_core::{column_value_swap, gen_random_uniform, transpose, LatinSquare};

fn revalidate(l: &LatinSquare) {
    let rows: Vec<Vec<u16>> = l.cells().chunks(l.n()).map(|r| r.to_vec()).collect();
    LatinSquare::from_rows(&rows).unwrap();
}

#[test]
fn transforms_preserve_validity_on_random_squares() {
    for i in 0..40 {
        let n = 2 + (i % 9) as usize;
        let l = gen_random_uniform(n, split_seed(7, i), (n * n * n) as u64);
        revalidate(&transpose(&l));
        revalidate(&column_value_swap(&l));
        assert_eq!(transpose(&transpose(&l)), l);
        assert_eq!(column_value_swap(&column_value_swap(&l)), l);
    }
}
