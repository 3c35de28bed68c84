use ssig_core::*;
use ssig_core::graph::modpoly::ModPoly;
fn main() {
    let ctx = FieldCtx::new(73).unwrap();
    let phi = ModPoly::load(std::path::Path::new("data/phi/phi_j_7.txt"), 7, &ctx).unwrap();
    let g = IsogenyGraph::build(&ctx, &phi, 1).unwrap();
    println!("vertices: {:?}", g.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>());
    for row in g.adjacency() { println!("{row:?}"); }
    let grp = aut::automorphisms(&g).unwrap();
    println!("order {}", grp.order);
    for e in &grp.elements { println!("{:?} ord {}", e.image, e.order()); }
    let brute = aut::brute_force_automorphisms(&g).unwrap();
    println!("brute order {}", brute.len());
    for e in &brute { println!("b {:?}", e.image); }
    let fr = g.frobenius_permutation().unwrap();
    println!("frobenius {:?}", fr.image);
}
