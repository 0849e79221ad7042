#include "alloc_audit.hpp"

#include <cstdlib>
#include <new>

namespace {

bool armed = false;
size_t bytes = 0;

void* counted(size_t n) {
    if (armed) bytes += n;
    if (void* p = std::malloc(n ? n : 1)) return p;
    throw std::bad_alloc();
}

} // namespace

void* operator new(size_t n) {
    return counted(n);
}

void* operator new[](size_t n) {
    return counted(n);
}

void operator delete(void* p) noexcept {
    std::free(p);
}

void operator delete[](void* p) noexcept {
    std::free(p);
}

void operator delete(void* p, size_t) noexcept {
    std::free(p);
}

void operator delete[](void* p, size_t) noexcept {
    std::free(p);
}

namespace alloc_audit {

void arm() {
    bytes = 0;
    armed = true;
}

size_t disarm() {
    armed = false;
    return bytes;
}

} // namespace alloc_audit
