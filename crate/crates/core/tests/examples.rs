mod cone_geometry {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/cone_geometry.rs"
    ));
}

mod spectrum {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/spectrum.rs"));
}

mod wavefunction {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/wavefunction.rs"
    ));
}

mod kernel {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/kernel.rs"));
}

mod curvature_discrimination {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/curvature_discrimination.rs"
    ));
}

mod recombination {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/recombination.rs"
    ));
}

mod transfer_matrix {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/transfer_matrix.rs"
    ));
}

mod semigroup {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/semigroup.rs"
    ));
}

mod verify_report {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/verify_report.rs"
    ));
}

#[test]
fn cone_geometry_example_runs() {
    cone_geometry::run_example().expect("cone_geometry example should run");
}

#[test]
fn spectrum_example_runs() {
    spectrum::run_example().expect("spectrum example should run");
}

#[test]
fn wavefunction_example_runs() {
    wavefunction::run_example().expect("wavefunction example should run");
}

#[test]
fn kernel_example_runs() {
    kernel::run_example().expect("kernel example should run");
}

#[test]
fn curvature_discrimination_example_runs() {
    curvature_discrimination::run_example().expect("curvature_discrimination example should run");
}

#[test]
fn recombination_example_runs() {
    recombination::run_example().expect("recombination example should run");
}

#[test]
fn transfer_matrix_example_runs() {
    transfer_matrix::run_example().expect("transfer_matrix example should run");
}

#[test]
fn semigroup_example_runs() {
    semigroup::run_example().expect("semigroup example should run");
}

#[test]
fn verify_report_example_runs() {
    verify_report::run_example().expect("verify_report example should run");
}
