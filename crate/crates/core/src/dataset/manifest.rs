use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::csvio::write_text;
use crate::error::{Error, Result};
use crate::qsolve::{StageFrames, WavePacketParams};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SampleStatus {
    Ok,
    Failed { message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameFile {
    pub step: usize,
    pub time: f64,
    pub path: String,
}

/// Output files of one sample, relative to the dataset directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleFiles {
    pub initial: String,
    pub frames: Vec<FrameFile>,
    pub profile_t1: String,
    pub profile_t2: String,
    pub profile_t3: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub id: usize,
    pub params: WavePacketParams,
    /// Hash of the full per-sample simulation config.
    pub config_hash: String,
    #[serde(flatten)]
    pub status: SampleStatus,
    /// Indices into `files.frames` of the three fringe stages.
    pub stages: Option<StageFrames>,
    pub files: Option<SampleFiles>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub toolkit_version: String,
    /// Hash of the simulation config and sweep spec together.
    pub config_hash: String,
    pub sample_cap: Option<usize>,
    pub full_product: usize,
    pub simulation: BTreeMap<String, String>,
    pub sweep: BTreeMap<String, String>,
    pub samples: Vec<SampleRecord>,
}

impl DatasetManifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: Self = serde_json::from_str(text)?;
        m.check_ids()?;
        Ok(m)
    }

    fn check_ids(&self) -> Result<()> {
        for (i, s) in self.samples.iter().enumerate() {
            if s.id != i {
                return Err(Error::Format(format!("sample ids must be dense from 0; found {} at position {i}", s.id)));
            }
        }
        Ok(())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_text(path, &self.to_json())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn failed_count(&self) -> usize {
        self.samples.iter().filter(|s| s.status != SampleStatus::Ok).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: usize, ok: bool) -> SampleRecord {
        SampleRecord {
            id,
            params: WavePacketParams { x0: 0.41, y0: 0.41, sigma_x: 0.0015, sigma_y: 1e-3 / 3.0, k: 60.0 },
            config_hash: "ab".into(),
            status: if ok { SampleStatus::Ok } else { SampleStatus::Failed { message: "no convergence".into() } },
            stages: ok.then_some(StageFrames { t1: 2, t2: 6, t3: 10 }),
            files: ok.then(|| SampleFiles {
                initial: "sample_00000/initial.qf2".into(),
                frames: vec![FrameFile { step: 10, time: 0.001, path: "sample_00000/frame_000010.qm2".into() }],
                profile_t1: "a.csv".into(),
                profile_t2: "b.csv".into(),
                profile_t3: "c.csv".into(),
            }),
        }
    }

    fn manifest() -> DatasetManifest {
        DatasetManifest {
            toolkit_version: "0.1.0".into(),
            config_hash: "ff".into(),
            sample_cap: Some(2),
            full_product: 4,
            simulation: BTreeMap::from([("dt".into(), "0.0001".into())]),
            sweep: BTreeMap::new(),
            samples: vec![record(0, true), record(1, false)],
        }
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let text = manifest().to_json();
        let back = DatasetManifest::from_json(&text).unwrap();
        assert_eq!(back, manifest());
        assert_eq!(back.to_json(), text);
        assert_eq!(back.failed_count(), 1);
        assert!(text.contains("\"status\": \"failed\""));
    }

    #[test]
    fn non_dense_ids_rejected() {
        let mut m = manifest();
        m.samples[1].id = 5;
        assert!(DatasetManifest::from_json(&m.to_json()).is_err());
    }
}
