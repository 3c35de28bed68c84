use std::path::PathBuf;

use ssig_core::graph::modpoly::ModPoly;
use ssig_core::{FieldCtx, IsogenyGraph};

pub fn phi_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/phi")
}

pub fn load_phi(l: u64, ctx: &FieldCtx) -> ModPoly {
    let path = phi_dir().join(format!("phi_j_{l}.txt"));
    ModPoly::load(&path, l, ctx).unwrap_or_else(|e| panic!("loading phi_j_{l}: {e}"))
}

pub fn build(p: u64, l: u64) -> IsogenyGraph {
    let ctx = FieldCtx::new(p).unwrap();
    let phi = load_phi(l, &ctx);
    IsogenyGraph::build(&ctx, &phi, ssig_core::DEFAULT_SEED)
        .unwrap_or_else(|e| panic!("building G({p},{l}): {e}"))
}
