use ssig_core::*;
use ssig_core::graph::modpoly::ModPoly;
fn main() {
    let ctx = FieldCtx::new(73).unwrap();
    let phi = ModPoly::load(std::path::Path::new("data/phi/phi_j_2.txt"), 2, &ctx).unwrap();
    let g = IsogenyGraph::build(&ctx, &phi, 1).unwrap();
    println!("initial: {}", graph::initial_supersingular_j(&ctx).unwrap());
    println!("vertices: {:?}", g.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>());
    for row in g.adjacency() { println!("{row:?}"); }
    let r = hecke::hecke_generates(&g).unwrap();
    println!("restricted: {:?}", r.charpoly_restricted.to_decimal_strings());
    println!("generates: {}", r.generates);
    println!("ramanujan: {:?}", hecke::ramanujan_verify(&g).unwrap());
}
