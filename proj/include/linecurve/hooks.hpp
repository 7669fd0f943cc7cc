#ifndef LINECURVE_HOOKS_HPP
#define LINECURVE_HOOKS_HPP

namespace linecurve::detail {

// Fault-injection switches used by the selftest sensitivity checks. They let
// a test deliberately break one audited convention and verify that the audit
// catches it. Production paths leave both false.
struct Hooks {
  bool flip_section_convention = false;  // use dr/dxi instead of dr/dxibar
  bool flip_cone_line_sign = false;      // negate the r1 term of cone_line
};

Hooks& hooks();

// Reads LINECURVE_DEBUG_FLIP ("pot1" or "cone_sign") into the hook flags.
void load_hooks_from_env();

}  // namespace linecurve::detail

#endif
