pub mod checkpoint;
pub mod kv;
pub mod manifest;
pub mod rttm;
pub mod scores;
