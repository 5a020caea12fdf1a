//! Translation of superposition refutation traces into lambda-Pi modulo
//! proof scripts, with an embedded checker.

pub mod cli;
pub mod dk;
pub mod drv;
pub mod embedding;
pub mod fol;
pub mod kernel;
pub mod translate;

/// Kernel-checks every entry of a document, in order.
pub fn check_document(doc: &dk::Document, opts: kernel::CheckOptions) -> (kernel::Signature, kernel::CheckReport) {
    kernel::check_entries(&dk::resolve_document(doc), opts)
}
