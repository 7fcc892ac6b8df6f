//! Register-limited occupancy.

use super::{DeviceProfile, FusionError, KernelCost};

/// Maximum simultaneously resident CTAs for a kernel:
///
/// ```text
/// floor(registers_per_smx / (registers_per_thread * threads_per_cta)) * smx_count
/// ```
///
/// The floor is deliberate: resident CTAs cannot exceed the register file.
/// A zero result means the kernel cannot run at this CTA width at all and is
/// surfaced as an error naming the kernel.
pub fn max_resident_ctas(profile: &DeviceProfile, kernel: &KernelCost) -> Result<u32, FusionError> {
    let per_cta = u64::from(kernel.registers_per_thread) * u64::from(profile.threads_per_cta);
    let per_smx = u64::from(profile.registers_per_smx) / per_cta;
    let total = per_smx * u64::from(profile.smx_count);
    if total == 0 {
        return Err(FusionError::ZeroOccupancy {
            kernel: kernel.name.clone(),
        });
    }
    Ok(u32::try_from(total).unwrap_or(u32::MAX))
}
