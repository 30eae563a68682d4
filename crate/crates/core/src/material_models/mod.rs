//! Permittivity and permeability models on the imaginary frequency axis.

pub mod atom;
pub mod closed_form;
pub mod kramers_kronig;
pub mod medium;
pub mod mie;
pub mod response;

pub use atom::{atomic_polarizability, AtomParams};
pub use closed_form::{
    composite_axis_eps, drude_eps, lorentz_term, maxwell_garnett_eps, polaritonic_eps, CompositeAxisParams,
    DrudeParams, Frequency, ImaginaryFrequency, LorentzResonanceParams, PolaritonicParams,
};
pub use kramers_kronig::{kk_to_imaginary_axis, KkOptions, KkResult};
pub use medium::{DiagonalTensorResponse, MaterialModel};
pub use mie::{emg_effective_response, mie_dipole_coeffs, EmgResponse, Inclusion, SphereCompositeParams};
pub use response::{EmgComponent, EmgSpec, EmgTable, Response, StaticLimit};

/// Response pair of the non-connected metamaterial: metallic spheres mixed
/// into a host, plus added electric and magnetic resonances.
pub fn nc_metamaterial_response(
    filling_factor: f64,
    metal: DrudeParams,
    host: Response,
    electric: LorentzResonanceParams,
    magnetic: LorentzResonanceParams,
) -> (Response, Response) {
    let mg = Response::MaxwellGarnett {
        filling_factor,
        inclusion: Box::new(Response::Drude(metal)),
        host: Box::new(host),
    };
    let eps = Response::Sum { terms: vec![mg, Response::Lorentz { oscillators: vec![electric] }] };
    let mu = Response::Lorentz { oscillators: vec![magnetic] };
    (eps, mu)
}
