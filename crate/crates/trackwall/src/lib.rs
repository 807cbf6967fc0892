//! Category-aware tracker blocking: data loading, persistence, the shared
//! gateway state, the forward proxy, the control API, offline replay and
//! report rendering. The decision logic itself lives in `trackwall-core`.

pub mod api;
pub mod data;
pub mod gateway;
pub mod http;
pub mod proxy;
pub mod replay;
pub mod report;
pub mod store;
