//! The spin-3/2 fixture set as JSON files.

use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;

use qprop_core::spin::{spin32_fixtures, SpinFixtureSet};
use qprop_core::subspace::{kernel_of, range_of};
use qprop_core::Tolerance;

use crate::format::{to_pretty, MatrixJson, ProjectorJson, StateJson, SubspaceJson};

pub const DEFAULT_DIR: &str = "fixtures/spin32";

/// Atom manifest shipped with the fixtures: `P` is spin +3/2 along y,
/// `Q` is the line through `|X+3/2>`.
pub const ATOMS_FILE: &str = "atoms.json";

#[derive(Serialize)]
struct Atoms {
    #[serde(rename = "P")]
    p: &'static str,
    #[serde(rename = "Q")]
    q: &'static str,
}

/// `(file name, contents)` for every fixture file, in a fixed order.
pub fn fixture_files() -> Vec<(&'static str, String)> {
    let tol = Tolerance::default();
    let fx = spin32_fixtures();
    let y = &fx.projector_y32;
    vec![
        (
            "projector_Y32.json",
            to_pretty(&ProjectorJson::new(y, Some(SpinFixtureSet::PROJECTOR_Y32))),
        ),
        (
            "projector_X32.json",
            to_pretty(&ProjectorJson::new(
                &fx.projector_x32(),
                Some(SpinFixtureSet::PROJECTOR_X32),
            )),
        ),
        ("ket_Y32.json", to_pretty(&StateJson::from(&fx.ket_y32))),
        ("ket_Y12.json", to_pretty(&StateJson::from(&fx.ket_y12))),
        ("ket_X32.json", to_pretty(&StateJson::from(&fx.ket_x32))),
        (
            "range_Y32.json",
            to_pretty(&SubspaceJson::from(&range_of(y, &tol))),
        ),
        (
            "kernel_Y32.json",
            to_pretty(&SubspaceJson::from(&kernel_of(y, &tol))),
        ),
        (
            "range_generators_Y32.json",
            to_pretty(&MatrixJson::from(&fx.range_generator())),
        ),
        (
            "kernel_generators_Y32.json",
            to_pretty(&MatrixJson::from(&fx.kernel_generators())),
        ),
        (
            ATOMS_FILE,
            to_pretty(&Atoms {
                p: "projector_Y32.json",
                q: "projector_X32.json",
            }),
        ),
    ]
}

/// Writes the fixture files into `dir`, creating it if needed. Returns the
/// file names written.
pub fn export(dir: &Path) -> io::Result<Vec<&'static str>> {
    fs::create_dir_all(dir)?;
    let files = fixture_files();
    for (name, text) in &files {
        fs::write(dir.join(name), text)?;
    }
    Ok(files.into_iter().map(|(name, _)| name).collect())
}
