from .channel_file import ChannelFile, load_channel_file
from .examples import BUNDLED, KnownRegion, NamedChannel, build_binary_additive, build_mod_channel, random_channel

__all__ = [
    "NamedChannel",
    "KnownRegion",
    "BUNDLED",
    "build_mod_channel",
    "build_binary_additive",
    "random_channel",
    "ChannelFile",
    "load_channel_file",
]
