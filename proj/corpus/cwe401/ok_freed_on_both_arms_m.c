int cwe401_ok_freed_on_both_arms_m_main(int c) {
  char *p = malloc(16);
  if (c) {
    p[0] = 1;
    free(p);
  } else {
    free(p);
  }
  return 0;
}
