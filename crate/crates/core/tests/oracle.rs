mod common;

use common::*;
use graph_spectra::partition::{cheeger_exact, dual_cheeger_exact};

fn agree(g: &IntGraph) {
    let wg = g.to_graph();
    let h = cheeger_exact(&wg).unwrap();
    let hb = dual_cheeger_exact(&wg).unwrap();
    assert_eq!(h.value, as_f64(cheeger_oracle(g)), "h on {g:?}");
    assert_eq!(hb.value, as_f64(dual_cheeger_oracle(g)), "hbar on {g:?}");
    assert_eq!(h.bipartition().unwrap().cheeger_ratio(), h.value);
    assert_eq!(hb.tripartition().unwrap().dual_ratio(), hb.value);
}

#[test]
fn every_connected_simple_graph_up_to_five_vertices() {
    let mut count = 0;
    for n in 2..=5 {
        for g in all_simple_connected(n) {
            agree(&g);
            count += 1;
        }
    }
    // labeled connected graphs: 1 + 4 + 38 + 728
    assert_eq!(count, 771);
}

#[test]
fn every_connected_simple_graph_on_six_vertices() {
    let all = all_simple_connected(6);
    assert_eq!(all.len(), 26704);
    for g in &all {
        agree(g);
    }
}

#[test]
fn random_integer_weighted_graphs_six_and_seven_vertices() {
    for n in [6, 7] {
        for g in random_int_graphs(n, 150, n as u64) {
            agree(&g);
        }
    }
}

#[test]
fn oracle_sanity() {
    // triangle: h = 1 (one vertex vs two: 2/2), h̄ = 2/3
    let k3 = IntGraph { n: 3, w: vec![0, 1, 1, 1, 0, 1, 1, 1, 0] };
    assert_eq!(cheeger_oracle(&k3), Q::new(1, 1));
    assert_eq!(dual_cheeger_oracle(&k3), Q::new(2, 3));
}
