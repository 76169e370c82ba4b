//! Noise channels, readout error and calibration-driven device models.

mod calibration;
mod channel;
mod model;

pub use calibration::{
    device_model_from_calibration, device_model_with_routing, pair_errors, CalibrationRecord,
    PairError,
};
pub use channel::{
    amplitude_damping, apply_channel, bit_flip, depolarizing, phase_damping, ChannelKind,
    KrausChannel,
};
pub use model::{apply_readout_flip, GateNoise, GateScope, HopNoise, NoiseModel, Placement};
