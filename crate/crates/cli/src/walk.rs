//! Non-backtracking message-driven walk on G(p, 2), in the style of the
//! Charles-Goren-Lauter hash construction. Demonstration only: the output
//! is deterministic and collision behavior is NOT cryptographically
//! hardened.
//!
//! Step rule: list the 3 out-neighbors of the current vertex in canonical
//! order (with multiplicity), remove one unit of multiplicity of the
//! previous vertex, and consume one message bit to pick between the 2
//! remaining candidates. The very first step has no previous vertex; the
//! candidate list is truncated to its first two entries so that one bit
//! still decides.

use serde::Serialize;

use ssig_core::{Error, FieldCtx, Fp2, IsogenyGraph};

use crate::{CliError, CliResult};

/// Walk position; `current` is always adjacent to `previous` when the
/// latter exists.
struct WalkState {
    current: usize,
    previous: Option<usize>,
    consumed_bits: usize,
}

#[derive(Serialize)]
pub struct WalkOutcome {
    pub p: u64,
    pub l: u64,
    pub start: String,
    pub message_hex: String,
    pub bits_consumed: usize,
    pub r#final: String,
}

pub fn run_walk(
    graph: &IsogenyGraph,
    ctx: &FieldCtx,
    message: &str,
    start: Option<Fp2>,
) -> CliResult<WalkOutcome> {
    let bits = hex_to_bits(message)?;
    let start_j = match start {
        Some(j) => j,
        None => ssig_core::graph::initial_supersingular_j(ctx)?,
    };
    let start_idx = graph
        .vertex_index(start_j)
        .ok_or_else(|| Error::StartNotSupersingular(start_j.to_string()))?;

    let mut state = WalkState { current: start_idx, previous: None, consumed_bits: 0 };
    for &bit in &bits {
        state = step(graph, state, bit);
    }
    Ok(WalkOutcome {
        p: graph.p(),
        l: graph.l(),
        start: start_j.to_string(),
        message_hex: message.trim().to_ascii_lowercase(),
        bits_consumed: state.consumed_bits,
        r#final: graph.vertices()[state.current].to_string(),
    })
}

fn step(graph: &IsogenyGraph, state: WalkState, bit: bool) -> WalkState {
    // canonical candidate list: vertex indices ascending = j ascending
    let mut candidates = Vec::with_capacity(3);
    for (k, &m) in graph.adjacency()[state.current].iter().enumerate() {
        for _ in 0..m {
            candidates.push(k);
        }
    }
    match state.previous {
        Some(prev) => {
            let pos = candidates
                .iter()
                .position(|&c| c == prev)
                .expect("weighted symmetry guarantees a return edge");
            candidates.remove(pos);
        }
        None => candidates.truncate(2),
    }
    debug_assert_eq!(candidates.len(), 2);
    let next = if bit { candidates[1] } else { candidates[0] };
    WalkState {
        current: next,
        previous: Some(state.current),
        consumed_bits: state.consumed_bits + 1,
    }
}

/// Hex string -> MSB-first bits; whole bytes only.
fn hex_to_bits(message: &str) -> CliResult<Vec<bool>> {
    let message = message.trim();
    if message.is_empty() {
        return Err(CliError::Usage("message must be nonempty hex".into()));
    }
    if message.len() % 2 != 0 {
        return Err(CliError::Usage(
            "message must be whole bytes (even number of hex digits)".into(),
        ));
    }
    let mut bits = Vec::with_capacity(message.len() * 4);
    for ch in message.chars() {
        let v = ch
            .to_digit(16)
            .ok_or_else(|| CliError::Usage(format!("invalid hex digit `{ch}`")))?;
        for shift in (0..4).rev() {
            bits.push((v >> shift) & 1 == 1);
        }
    }
    Ok(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_parsing() {
        assert_eq!(hex_to_bits("0f").unwrap(), vec![false, false, false, false, true, true, true, true]);
        assert!(hex_to_bits("").is_err());
        assert!(hex_to_bits("abc").is_err());
        assert!(hex_to_bits("zz").is_err());
    }
}
