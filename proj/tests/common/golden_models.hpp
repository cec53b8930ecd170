// Copyright 2026 The Reach Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace reach::testing {

// Four types, dynamic dispatch on an interface, one allocation that never
// flows anywhere. The two engines disagree exactly on B.bar().
inline constexpr const char* kRunningExample = R"(
class Hello
  method static main(): void
    h = new Hello
    a = new A
    invokevirtual Hello.foo(I)(h, a)
    invokestatic Hello.log()()
    return
  method static log(): void
    b = new B
    return
  method foo(I): void
    invokevirtual I.bar()(p0)
    return

interface I
  method abstract bar(): void

class A implements I
  method bar(): void
    return

class B implements I
  method bar(): void
    return

root Hello.main()
)";

// A special invoke whose target type is never instantiated: the guarded
// callee must stay unreachable while the invoke is distinguished.
inline constexpr const char* kGuardedSpecial = R"(
class Thread
  method static sleep(): void
    t = invokestatic Thread.current()()
    invokespecial VirtualThread.vsleep()(t)
    return
  method static current(): Thread
    t = new Thread
    return t

class VirtualThread extends Thread
  method vsleep(): void
    return

class Main
  method static main(): void
    invokestatic Thread.sleep()()
    return

root Main.main()
)";

// Same program plus one allocation of the guarded type.
inline constexpr const char* kGuardedSpecialInstantiated = R"(
class Thread
  method static sleep(): void
    t = invokestatic Thread.current()()
    invokespecial VirtualThread.vsleep()(t)
    return
  method static current(): Thread
    t = new Thread
    return t

class VirtualThread extends Thread
  method vsleep(): void
    return

class Main
  method static main(): void
    v = new VirtualThread
    invokestatic Thread.sleep()()
    return

root Main.main()
)";

// An embedded constant roots the heap scan; the read field pulls the
// component object in and makes its type a dispatch target.
inline constexpr const char* kEmbeddedConstant = R"(
class Holder
  field inner: Component

class Component
  method execute(): void
    return

class App
  method static main(): void
    h = const h1
    x = getfield h, Holder.inner
    invokevirtual Component.execute()(x)
    return

object h1: Holder {Holder.inner -> c1}
object c1: Component
root App.main()
)";

// Same heap, but nothing ever reads Holder.inner.
inline constexpr const char* kEmbeddedConstantNoRead = R"(
class Holder
  field inner: Component

class Component
  method execute(): void
    return

class App
  method static main(): void
    h = const h1
    invokevirtual Component.execute()(h)
    return

object h1: Holder {Holder.inner -> c1}
object c1: Component
root App.main()
)";

inline constexpr const char* kEmptyMain = R"(
class Main
  method static main(): void
    return

root Main.main()
)";

// Build-time initialized static field; reading it pulls the value object
// into the image heap.
inline constexpr const char* kStaticInitRead = R"(
class Box
  method poke(): void
    return

class Env
  field static config: Box = b1

class Main
  method static main(): void
    b = getstatic Env.config
    invokevirtual Box.poke()(b)
    return

object b1: Box
init Env
root Main.main()
)";

// Same model but the field is only written.
inline constexpr const char* kStaticInitWriteOnly = R"(
class Box
  method poke(): void
    return

class Env
  field static config: Box = b1

class Main
  method static main(): void
    b = new Box
    putstatic Env.config, b
    return

object b1: Box
init Env
root Main.main()
)";

}  // namespace reach::testing
