package corpus

import (
	"os"
	"strconv"
)

type Config struct {
	Port    int
	Debug   bool
	Workers int
}

func FromEnv() Config {
	cfg := Config{Port: 8080, Workers: 4}
	if v, ok := os.LookupEnv("PORT"); ok {
		if p, err := strconv.Atoi(v); err == nil {
			cfg.Port = p
		}
	}
	if os.Getenv("DEBUG") == "1" {
		cfg.Debug = true
	}
	if v := os.Getenv("WORKERS"); v != "" {
		if n, err := strconv.Atoi(v); err == nil && n > 0 {
			cfg.Workers = n
		}
	}
	return cfg
}
