from .service import ChainResult, DigitalRun, SignalChainService, reset_noise_delta

__all__ = ['ChainResult', 'DigitalRun', 'SignalChainService', 'reset_noise_delta']
