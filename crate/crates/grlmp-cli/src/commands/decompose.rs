//! Mass decomposition of a truncated bivariate spec.

use grlmp::{DecomposeConfig, Model};

use crate::{io, CliError};

pub fn run(spec_path: &str, quad_nodes: usize, out: Option<&str>) -> Result<(), CliError> {
    if quad_nodes == 0 {
        return Err(CliError::Validation(
            "--quad-nodes must be at least 1".into(),
        ));
    }
    let spec = io::read_spec(spec_path)?;
    let model = spec.resolve()?;
    let d = match model {
        Model::TruncatedBivariate(d) => d,
        _ => {
            return Err(CliError::Validation(
                "decompose requires a bivariate spec with \"truncated\": true".into(),
            ))
        }
    };
    let report = d.decompose(DecomposeConfig {
        nodes: quad_nodes,
        mass_tolerance: 1e-3,
    })?;
    io::emit_json(out, &report)
}
