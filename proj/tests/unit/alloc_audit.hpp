#pragma once

#include <cstddef>

// Counts bytes requested from the global operator new while armed.
namespace alloc_audit {

void arm();
// bytes allocated since arm()
size_t disarm();

} // namespace alloc_audit
