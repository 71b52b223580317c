//! Benchmark-only crate; see `benches/protocol.rs`.

/// Reference parameter set used across the benchmark groups.
pub fn reference() -> (noswitch_core::SourceParams, noswitch_core::ChannelParams) {
    (
        noswitch_core::SourceParams::coherent(100.0).unwrap(),
        noswitch_core::ChannelParams::symmetric(0.5, 1.2).unwrap(),
    )
}
