//! Parameter sweeps, batch dataset generation and the on-disk formats.

mod formats;
mod generate;
mod manifest;
mod split;
mod sweep;

pub use formats::{
    decode_qf2, decode_qm2, encode_qf2, encode_qm2, profile_csv, read_any_modulus, read_profile, read_qf2, read_qm2,
    write_profile, write_qf2, write_qm2, QF2_MAGIC, QM2_MAGIC,
};
pub use generate::{generate_dataset, sample_config};
pub use manifest::{DatasetManifest, FrameFile, SampleFiles, SampleRecord, SampleStatus, MANIFEST_FILE};
pub use split::{export, join_left_right, resample, split_left_right, Array2, ExportPreset};
pub use sweep::{enumerate_sweep, SweepSpec, DEFAULT_SAMPLE_CAP};
