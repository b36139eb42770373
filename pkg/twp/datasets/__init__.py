from .random_instance import Instance, RandomInstanceGenerator, generate

__all__ = ['Instance', 'RandomInstanceGenerator', 'generate']
