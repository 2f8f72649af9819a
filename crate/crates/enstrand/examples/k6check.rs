use enstrand::algebra::FieldCfg;
use enstrand::betti::BettiOracle;
use enstrand::combinatorics::{clutter_from_skeleton, Face, SimplicialComplex};
use std::time::Instant;

fn main() {
    let facet: Vec<u32> = (1..=6).collect();
    let s = SimplicialComplex::from_facets(vec![Face::new(facet).unwrap()], 6).unwrap();
    let c = clutter_from_skeleton(&s, 2).unwrap();
    let o = BettiOracle::new(&c, FieldCfg::prime(32003).unwrap()).with_cap(64_000_000);
    for i in 0..=4usize {
        let t = Instant::now();
        let v = o.betti_koszul(i, i as u32 + 2).unwrap();
        println!("beta({i},{}) = {v}  [{:?}]", i + 2, t.elapsed());
    }
}
